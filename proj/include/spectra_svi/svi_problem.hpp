#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "spectra_svi/block_profile.hpp"

namespace spectra_svi {

/// Additive oracle noise Z with E[Z] = 0.
struct NoiseModel {
  enum class Kind { kNone, kHermitianGaussian };

  Kind kind = Kind::kNone;
  double sigma = 0.0;

  static NoiseModel None() { return {}; }
  /// Each block is Hermitianize(A), A with i.i.d. circular complex Gaussian
  /// entries of variance sigma^2.
  static NoiseModel HermitianGaussian(double sigma);

  bool active() const { return kind != Kind::kNone && sigma > 0.0; }
  std::string Describe() const;
};

/// Deterministic part F of the stochastic mapping Phi(X, xi) = F(X) + Z.
using Mapping = std::function<BlockProfile(const BlockProfile&)>;

/// Stochastic variational inequality over a product of spectrahedra.
/// Immutable after construction; safe to share between threads.
class SviProblem {
 public:
  /// When `oracle_bound` is empty the constant C of E||Phi||_2^2 <= C^2 is
  /// estimated with EstimateOracleBound.
  SviProblem(SpectraSet set, Mapping mapping, NoiseModel noise,
             std::optional<double> oracle_bound = std::nullopt, std::string description = {});

  const SpectraSet& set() const { return set_; }
  const NoiseModel& noise() const { return noise_; }
  double oracle_bound() const { return oracle_bound_; }
  bool oracle_bound_estimated() const { return oracle_bound_estimated_; }
  const std::string& description() const { return description_; }

  /// F(X). Throws DomainError if X or the mapping output does not conform.
  BlockProfile Evaluate(const BlockProfile& x) const;

  /// Same problem with F replaced by F(X) + shift * X.
  SviProblem Regularized(double shift) const;

 private:
  SpectraSet set_;
  Mapping mapping_;
  NoiseModel noise_;
  double oracle_bound_ = 0.0;
  bool oracle_bound_estimated_ = false;
  std::string description_;
};

struct OracleSample {
  BlockProfile phi;
  BlockProfile noise;
};

BlockProfile SampleNoise(const SpectraSet& set, const NoiseModel& noise, RngStream& rng);

/// Phi(X, xi) = F(X) + Z with Z drawn from `rng`.
OracleSample SampleOracle(const SviProblem& problem, const BlockProfile& x, RngStream& rng);

inline constexpr int kOracleBoundProbes = 100;
inline constexpr double kOracleBoundSafety = 1.5;
inline constexpr std::uint64_t kOracleBoundSeed = 0x5eed0c0ffee1234ULL;

/// 1.5 * max ||Phi(Z, xi)||_2 over 100 random feasible probes Z, using a
/// fixed internal seed.
double EstimateOracleBound(const SpectraSet& set, const Mapping& mapping, const NoiseModel& noise);

/// Gap(X) = sup_{Z in set} tr(F(X)(X - Z)), in closed form from the minimum
/// eigenvalue of each block of F(X).
double StrongGap(const SviProblem& problem, const BlockProfile& x);
double StrongGapFromValue(const BlockProfile& f_value, const BlockProfile& x,
                          const SpectraSet& set);

/// argmin_{Z in set} tr(F Z): p v v^H for the bottom eigenvector v, or 0 in
/// TraceAtMost blocks whose F_i is PSD.
BlockProfile LinearMinimizer(const BlockProfile& f_value, const SpectraSet& set);

/// Lower bound on G(X) = sup_Z tr(F(Z)(X - Z)): running max over X itself,
/// the strong-gap maximizer and `probes` random feasible points.
double WeakGapEstimate(const SviProblem& problem, const BlockProfile& x, int probes,
                       RngStream& rng);

/// tr((X - Y)(F(X) - F(Y))). Test support only.
double MonotonicityWitness(const SviProblem& problem, const BlockProfile& x,
                           const BlockProfile& y);

/// F(X) = X - B: gradient of 0.5 ||X - B||_F^2, whose VI solution is the
/// Frobenius projection of B onto the set.
SviProblem QuadraticTestProblem(BlockProfile b, SpectraSet set,
                                NoiseModel noise = NoiseModel::None());

}  // namespace spectra_svi
