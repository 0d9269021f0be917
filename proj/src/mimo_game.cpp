#include "spectra_svi/mimo_game.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "spectra_svi/error.hpp"
#include "spectra_svi/matrix_io.hpp"

namespace spectra_svi::mimo {

NetworkTopology CanonicalTopology() {
  NetworkTopology t;
  t.distance_km.resize(7, 7);
  // rows T1..T7, columns R1..R7
  t.distance_km << 0.89, 1.01, 1.05, 1.10, 1.01, 1.05, 1.10,  //
      1.01, 0.89, 1.05, 2.10, 2.69, 2.66, 1.99,               //
      1.10, 1.90, 0.89, 1.01, 2.10, 2.72, 2.72,               //
      1.99, 2.61, 1.94, 0.89, 1.10, 2.10, 2.76,               //
      2.56, 2.69, 2.66, 1.99, 0.89, 1.05, 2.10,               //
      2.52, 2.10, 2.72, 2.72, 1.90, 0.89, 1.01,               //
      1.90, 1.10, 2.10, 2.76, 2.61, 1.94, 0.89;
  t.max_power = 1.0;
  return t;
}

NetworkTopology HexagonalTopology(double radius_km, double rx_offset, double max_power) {
  if (!(radius_km > 0.0) || !(rx_offset > 0.0) || !(max_power > 0.0)) {
    throw DomainError("hexagonal topology parameters must be positive");
  }
  constexpr int kCells = 7;
  const double spacing = std::sqrt(3.0) * radius_km;
  Eigen::Matrix<double, 2, kCells> tx, rx;
  tx.col(0).setZero();
  for (int k = 1; k < kCells; ++k) {
    const double a = std::numbers::pi / 6.0 + (k - 1) * std::numbers::pi / 3.0;
    tx.col(k) << spacing * std::cos(a), spacing * std::sin(a);
  }
  for (int k = 0; k < kCells; ++k) {
    const double a = k * std::numbers::pi / 3.0;
    rx.col(k) = tx.col(k) + rx_offset * radius_km * Eigen::Vector2d(std::cos(a), std::sin(a));
  }
  NetworkTopology t;
  t.max_power = max_power;
  t.distance_km.resize(kCells, kCells);
  for (int j = 0; j < kCells; ++j) {
    for (int i = 0; i < kCells; ++i) t.distance_km(j, i) = (tx.col(j) - rx.col(i)).norm();
  }
  return t;
}

NetworkTopology ReadTopology(std::istream& in) {
  std::vector<std::vector<double>> rows;
  double power = 1.0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "power") {
      if (!(ls >> power) || !(power > 0.0)) {
        throw DomainError("topology line " + std::to_string(line_no) + ": bad power");
      }
      continue;
    }
    std::vector<double> row;
    std::istringstream full(line);
    double v = 0.0;
    while (full >> v) row.push_back(v);
    if (!full.eof()) {
      throw DomainError("topology line " + std::to_string(line_no) + ": non-numeric entry");
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n == 0) throw DomainError("topology file has no distance rows");
  NetworkTopology t;
  t.max_power = power;
  t.distance_km.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    if (rows[j].size() != n) throw DomainError("topology distance matrix must be square");
    for (std::size_t i = 0; i < n; ++i) {
      if (!(rows[j][i] > 0.0)) throw DomainError("topology distances must be positive");
      t.distance_km(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = rows[j][i];
    }
  }
  return t;
}

NetworkTopology LoadTopology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open topology file '" + path + "'");
  return ReadTopology(in);
}

ChannelSet SampleChannels(const NetworkTopology& topology, Antennas antennas, RngStream& rng) {
  if (antennas.tx < 1 || antennas.rx < 1) throw DomainError("antenna counts must be >= 1");
  const std::size_t n = topology.users();
  ChannelSet c;
  c.tx_antennas.assign(n, antennas.tx);
  c.rx_antennas.assign(n, antennas.rx);
  c.h.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    c.h[j].reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = topology.distance(j, i);
      c.h[j].push_back(RandomComplexGaussian(antennas.rx, antennas.tx, 1.0 / (d * d), rng));
    }
  }
  return c;
}

void WriteChannels(std::ostream& out, const ChannelSet& channels) {
  std::vector<ComplexMatrix> flat;
  for (const auto& row : channels.h) flat.insert(flat.end(), row.begin(), row.end());
  WriteMatrices(out, flat);
}

ChannelSet ReadChannels(std::istream& in) {
  std::vector<ComplexMatrix> flat = ReadMatrices(in);
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
  if (n == 0 || n * n != flat.size()) {
    throw DomainError("channel file must hold N^2 matrices");
  }
  ChannelSet c;
  c.h.resize(n);
  c.tx_antennas.resize(n);
  c.rx_antennas.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) c.h[j].push_back(std::move(flat[j * n + i]));
  }
  for (std::size_t k = 0; k < n; ++k) {
    c.tx_antennas[k] = c.h[k][0].cols();
    c.rx_antennas[k] = c.h[0][k].rows();
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (c.h[j][i].rows() != c.rx_antennas[i] || c.h[j][i].cols() != c.tx_antennas[j]) {
        throw DomainError("channel (" + std::to_string(j) + "," + std::to_string(i) +
                          ") has inconsistent shape");
      }
    }
  }
  return c;
}

SpectraSet GameStrategySet(const NetworkTopology& topology, const ChannelSet& channels) {
  if (channels.users() != topology.users()) {
    throw DomainError("channel set and topology disagree on the number of users");
  }
  std::vector<BlockSpec> blocks;
  for (Eigen::Index m : channels.tx_antennas) {
    blocks.push_back({m, topology.max_power, TraceMode::kAtMost});
  }
  return SpectraSet(std::move(blocks));
}

namespace {

void RequireState(const ChannelSet& channels, const BlockProfile& x, std::size_t user) {
  if (user >= channels.users()) throw DomainError("user index out of range");
  if (x.size() != channels.users()) throw DomainError("game state has the wrong number of users");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j].dim() != channels.tx_antennas[j]) throw DomainError("covariance shape mismatch");
  }
}

HermitianMatrix Covariance(const ChannelSet& channels, const BlockProfile& x, std::size_t user,
                           bool include_self) {
  RequireState(channels, x, user);
  const Eigen::Index n = channels.rx_antennas[user];
  ComplexMatrix w = ComplexMatrix::Identity(n, n);
  for (std::size_t j = 0; j < channels.users(); ++j) {
    if (j == user && !include_self) continue;
    const ComplexMatrix& h = channels(j, user);
    w.noalias() += h * x[j].matrix() * h.adjoint();
  }
  return Hermitianize(w);
}

}  // namespace

HermitianMatrix MuiCovariance(const ChannelSet& channels, const BlockProfile& x,
                              std::size_t user) {
  return Covariance(channels, x, user, false);
}

HermitianMatrix FullCovariance(const ChannelSet& channels, const BlockProfile& x,
                               std::size_t user) {
  return Covariance(channels, x, user, true);
}

double LogDetPd(const HermitianMatrix& a) {
  Eigen::LLT<ComplexMatrix> llt(a.matrix());
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("log det: matrix is not positive definite");
  }
  return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
}

double Throughput(const ChannelSet& channels, const BlockProfile& x, std::size_t user) {
  return LogDetPd(FullCovariance(channels, x, user)) - LogDetPd(MuiCovariance(channels, x, user));
}

HermitianMatrix ThroughputGradient(const ChannelSet& channels, const BlockProfile& x,
                                   std::size_t user) {
  const HermitianMatrix w = FullCovariance(channels, x, user);
  const ComplexMatrix& h = channels(user, user);
  Eigen::LLT<ComplexMatrix> llt(w.matrix());
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("throughput gradient: covariance is not positive definite");
  }
  return Hermitianize(h.adjoint() * llt.solve(h));
}

SviProblem GameToSvi(const NetworkTopology& topology, ChannelSet channels, double sigma) {
  SpectraSet set = GameStrategySet(topology, channels);
  auto shared = std::make_shared<const ChannelSet>(std::move(channels));
  Mapping mapping = [shared](const BlockProfile& x) {
    BlockProfile f;
    f.blocks.reserve(shared->users());
    for (std::size_t i = 0; i < shared->users(); ++i) {
      f.blocks.push_back(-ThroughputGradient(*shared, x, i));
    }
    return f;
  };
  std::ostringstream desc;
  desc << "mimo game (" << shared->users() << " users, m=" << shared->tx_antennas[0]
       << ", n=" << shared->rx_antennas[0] << ", p=" << FormatDouble(topology.max_power) << ")";
  return SviProblem(std::move(set), std::move(mapping), NoiseModel::HermitianGaussian(sigma),
                    std::nullopt, desc.str());
}

}  // namespace spectra_svi::mimo
