#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "spectra_svi/hermitian.hpp"

namespace spectra_svi {

/// Random stream passed explicitly to every sampling routine.
using RngStream = std::mt19937_64;

enum class TraceMode { kEquals, kAtMost };

const char* ToString(TraceMode mode);

struct BlockSpec {
  Eigen::Index dim = 1;
  double bound = 1.0;
  TraceMode mode = TraceMode::kEquals;
};

/// Product of spectrahedra {X_i >= 0, tr X_i = p_i} or {X_i >= 0, tr X_i <= p_i}.
class SpectraSet {
 public:
  static constexpr double kPsdTolerance = 1e-9;
  static constexpr double kTraceTolerance = 1e-8;

  explicit SpectraSet(std::vector<BlockSpec> blocks);

  /// N identical blocks.
  static SpectraSet Uniform(std::size_t count, Eigen::Index dim, double bound, TraceMode mode);

  std::size_t size() const { return blocks_.size(); }
  const BlockSpec& operator[](std::size_t i) const { return blocks_[i]; }
  const std::vector<BlockSpec>& blocks() const { return blocks_; }

  /// Sum of block dimensions.
  Eigen::Index TotalDim() const;

 private:
  std::vector<BlockSpec> blocks_;
};

/// X = diag(X_1, ..., X_N) stored blockwise.
struct BlockProfile {
  std::vector<HermitianMatrix> blocks;

  static BlockProfile Zero(const SpectraSet& set);

  std::size_t size() const { return blocks.size(); }
  HermitianMatrix& operator[](std::size_t i) { return blocks[i]; }
  const HermitianMatrix& operator[](std::size_t i) const { return blocks[i]; }

  BlockProfile& operator+=(const BlockProfile& o);
  BlockProfile& operator-=(const BlockProfile& o);
  BlockProfile& operator*=(double s);
  friend BlockProfile operator+(BlockProfile a, const BlockProfile& b) { return a += b; }
  friend BlockProfile operator-(BlockProfile a, const BlockProfile& b) { return a -= b; }
  friend BlockProfile operator*(BlockProfile a, double s) { return a *= s; }
  friend BlockProfile operator*(double s, BlockProfile a) { return a *= s; }
};

/// sum_i tr(A_i B_i).
double TraceProduct(const BlockProfile& a, const BlockProfile& b);

/// Spectral norm of the block-diagonal matrix (max over blocks).
double SpectralNorm(const BlockProfile& a);

/// Frobenius norm of the block-diagonal matrix.
double FrobeniusNorm(const BlockProfile& a);

/// Trace norm of the block-diagonal matrix (sum over blocks).
double TraceNorm(const BlockProfile& a);

bool Conforms(const BlockProfile& x, const SpectraSet& set);

/// Empty string when x is feasible, otherwise a description of the first
/// violated constraint.
std::string FeasibilityViolation(const BlockProfile& x, const SpectraSet& set,
                                 double psd_tol = SpectraSet::kPsdTolerance,
                                 double trace_tol = SpectraSet::kTraceTolerance);

inline bool IsFeasible(const BlockProfile& x, const SpectraSet& set) {
  return FeasibilityViolation(x, set).empty();
}

/// Hermitianized matrix with i.i.d. circular complex Gaussian entries of
/// variance sigma^2 (before Hermitianization).
HermitianMatrix RandomHermitian(Eigen::Index n, double sigma, RngStream& rng);

/// Random complex n x m matrix, entries circular Gaussian with the given variance.
ComplexMatrix RandomComplexGaussian(Eigen::Index rows, Eigen::Index cols, double variance,
                                    RngStream& rng);

/// Full-support random point of the set: Gibbs state of a random Hermitian
/// matrix, scaled to p (TraceEquals) or u * p with u ~ U[0, 1] (TraceAtMost).
BlockProfile RandomFeasible(const SpectraSet& set, RngStream& rng, double spread = 3.0);

}  // namespace spectra_svi
