#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spectra_svi/block_profile.hpp"
#include "spectra_svi/svi_problem.hpp"

namespace spectra_svi::mimo {

// Multi-cell MIMO throughput game. Each user i owns a transmit covariance
// X_i (m_i x m_i, X_i >= 0, tr X_i <= p) and maximizes
//
//   R_i(X) = log det(I + sum_j H_ji X_j H_ji^H) - log det(W_{-i}),
//   W_{-i} = I + sum_{j != i} H_ji X_j H_ji^H,
//
// with natural logarithms throughout.

/// Transmitter-to-receiver distances (km) and the per-user power budget.
struct NetworkTopology {
  Eigen::MatrixXd distance_km;  // (tx j, rx i)
  double max_power = 1.0;

  std::size_t users() const { return static_cast<std::size_t>(distance_km.rows()); }
  double distance(std::size_t tx, std::size_t rx) const {
    return distance_km(static_cast<Eigen::Index>(tx), static_cast<Eigen::Index>(rx));
  }
};

/// The seven-cell network with its standard distance table, p = 1.
NetworkTopology CanonicalTopology();

/// Hexagonal layout generator: one center cell plus a ring of six, cell
/// radius `radius_km`. Each transmitter sits at its cell center and its
/// receiver at `rx_offset` * radius along a fixed bearing that rotates
/// by 60 degrees per cell.
NetworkTopology HexagonalTopology(double radius_km = 1.0, double rx_offset = 0.89,
                                  double max_power = 1.0);

/// Whitespace-separated N x N distance matrix, rows = transmitters, optional
/// `power <p>` line; '#' starts a comment. Throws DomainError.
NetworkTopology ReadTopology(std::istream& in);
NetworkTopology LoadTopology(const std::string& path);

struct Antennas {
  Eigen::Index tx = 2;  // m
  Eigen::Index rx = 2;  // n
};

/// H[j][i]: channel from transmitter j to receiver i, shape n_i x m_j.
struct ChannelSet {
  std::vector<std::vector<ComplexMatrix>> h;
  std::vector<Eigen::Index> tx_antennas;  // m_j
  std::vector<Eigen::Index> rx_antennas;  // n_i

  std::size_t users() const { return h.size(); }
  const ComplexMatrix& operator()(std::size_t tx, std::size_t rx) const { return h[tx][rx]; }
};

/// Rayleigh fading: entries circular complex Gaussian with variance 1/d^2.
ChannelSet SampleChannels(const NetworkTopology& topology, Antennas antennas, RngStream& rng);

/// Channel files use the block-profile text format; matrices are written in
/// (tx, rx) order with tx outermost, N^2 matrices in total.
void WriteChannels(std::ostream& out, const ChannelSet& channels);
ChannelSet ReadChannels(std::istream& in);

/// Strategy set of the game: N blocks of size m_i with tr X_i <= p.
SpectraSet GameStrategySet(const NetworkTopology& topology, const ChannelSet& channels);

/// W_{-i} = I + sum_{j != i} H_ji X_j H_ji^H.
HermitianMatrix MuiCovariance(const ChannelSet& channels, const BlockProfile& x, std::size_t user);

/// W = I + sum_j H_ji X_j H_ji^H (user i included).
HermitianMatrix FullCovariance(const ChannelSet& channels, const BlockProfile& x,
                               std::size_t user);

double Throughput(const ChannelSet& channels, const BlockProfile& x, std::size_t user);

/// grad_{X_i} R_i = H_ii^H W^{-1} H_ii with the full covariance W. The
/// interference term of R_i does not depend on X_i, so this is also the
/// gradient of the first log-det alone.
HermitianMatrix ThroughputGradient(const ChannelSet& channels, const BlockProfile& x,
                                   std::size_t user);

/// VI form of the game: F_i(X) = -grad_{X_i} R_i(X), TraceAtMost p blocks,
/// Hermitian Gaussian oracle noise of scale sigma.
SviProblem GameToSvi(const NetworkTopology& topology, ChannelSet channels, double sigma);

/// log det of a Hermitian positive definite matrix via Cholesky. Throws
/// NumericalFailure when the factorization fails.
double LogDetPd(const HermitianMatrix& a);

}  // namespace spectra_svi::mimo
