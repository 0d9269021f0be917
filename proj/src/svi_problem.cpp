#include "spectra_svi/svi_problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spectra_svi/error.hpp"
#include "spectra_svi/matrix_io.hpp"

namespace spectra_svi {

NoiseModel NoiseModel::HermitianGaussian(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError("noise sigma must be finite and >= 0");
  }
  return {Kind::kHermitianGaussian, sigma};
}

std::string NoiseModel::Describe() const {
  if (kind == Kind::kNone) return "none";
  return "hermitian-gaussian(sigma=" + FormatDouble(sigma) + ")";
}

SviProblem::SviProblem(SpectraSet set, Mapping mapping, NoiseModel noise,
                       std::optional<double> oracle_bound, std::string description)
    : set_(std::move(set)),
      mapping_(std::move(mapping)),
      noise_(noise),
      description_(std::move(description)) {
  if (!mapping_) throw DomainError("SVI problem needs a mapping");
  if (oracle_bound) {
    oracle_bound_ = *oracle_bound;
  } else {
    oracle_bound_ = EstimateOracleBound(set_, mapping_, noise_);
    oracle_bound_estimated_ = true;
  }
  if (!(oracle_bound_ > 0.0) || !std::isfinite(oracle_bound_)) {
    throw DomainError("oracle bound C must be positive and finite");
  }
}

BlockProfile SviProblem::Evaluate(const BlockProfile& x) const {
  if (!Conforms(x, set_)) throw DomainError("mapping argument does not conform to the set");
  BlockProfile f = mapping_(x);
  if (!Conforms(f, set_)) throw DomainError("mapping output does not conform to the set");
  return f;
}

SviProblem SviProblem::Regularized(double shift) const {
  if (!(shift >= 0.0)) throw DomainError("regularization shift must be >= 0");
  if (shift == 0.0) return *this;
  double radius = 0.0;
  for (const BlockSpec& b : set_.blocks()) radius = std::max(radius, b.bound);
  Mapping base = mapping_;
  Mapping shifted = [base, shift](const BlockProfile& x) {
    BlockProfile f = base(x);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += shift * x[i];
    return f;
  };
  return SviProblem(set_, std::move(shifted), noise_, oracle_bound_ + shift * radius,
                    description_ + " + " + FormatDouble(shift) + " X");
}

BlockProfile SampleNoise(const SpectraSet& set, const NoiseModel& noise, RngStream& rng) {
  BlockProfile z = BlockProfile::Zero(set);
  if (!noise.active()) return z;
  for (std::size_t i = 0; i < set.size(); ++i) {
    z[i] = RandomHermitian(set[i].dim, noise.sigma, rng);
  }
  return z;
}

OracleSample SampleOracle(const SviProblem& problem, const BlockProfile& x, RngStream& rng) {
  OracleSample s;
  s.noise = SampleNoise(problem.set(), problem.noise(), rng);
  s.phi = problem.Evaluate(x);
  if (problem.noise().active()) s.phi += s.noise;
  return s;
}

double EstimateOracleBound(const SpectraSet& set, const Mapping& mapping,
                           const NoiseModel& noise) {
  RngStream rng(kOracleBoundSeed);
  double worst = 0.0;
  for (int k = 0; k < kOracleBoundProbes; ++k) {
    const BlockProfile z = RandomFeasible(set, rng);
    BlockProfile phi = mapping(z);
    if (noise.active()) phi += SampleNoise(set, noise, rng);
    worst = std::max(worst, SpectralNorm(phi));
  }
  // A mapping that vanishes on every probe still needs a positive C.
  return kOracleBoundSafety * std::max(worst, 1e-12);
}

namespace {

// inf_{Z_i in block} tr(F_i Z_i).
double BlockLinearInf(const EigenDecomposition& f, const BlockSpec& spec) {
  const double lmin = f.min();
  return spec.mode == TraceMode::kAtMost ? spec.bound * std::min(0.0, lmin) : spec.bound * lmin;
}

}  // namespace

double StrongGapFromValue(const BlockProfile& f_value, const BlockProfile& x,
                          const SpectraSet& set) {
  if (!Conforms(f_value, set) || !Conforms(x, set)) {
    throw DomainError("strong gap: profile does not conform to the set");
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    gap += TraceProduct(f_value[i], x[i]) - BlockLinearInf(Eig(f_value[i]), set[i]);
  }
  return gap;
}

double StrongGap(const SviProblem& problem, const BlockProfile& x) {
  return StrongGapFromValue(problem.Evaluate(x), x, problem.set());
}

BlockProfile LinearMinimizer(const BlockProfile& f_value, const SpectraSet& set) {
  if (!Conforms(f_value, set)) throw DomainError("linear minimizer: profile does not conform");
  BlockProfile z = BlockProfile::Zero(set);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const EigenDecomposition d = Eig(f_value[i]);
    if (set[i].mode == TraceMode::kAtMost && d.min() >= 0.0) continue;
    const Eigen::VectorXcd v = d.eigenvectors.col(d.eigenvalues.size() - 1);
    z[i] = Hermitianize(v * v.adjoint()) * set[i].bound;
  }
  return z;
}

double WeakGapEstimate(const SviProblem& problem, const BlockProfile& x, int probes,
                       RngStream& rng) {
  auto value_at = [&](const BlockProfile& z) {
    return TraceProduct(problem.Evaluate(z), x - z);
  };
  double best = value_at(x);
  best = std::max(best, value_at(LinearMinimizer(problem.Evaluate(x), problem.set())));
  for (int k = 0; k < probes; ++k) {
    best = std::max(best, value_at(RandomFeasible(problem.set(), rng)));
  }
  return best;
}

double MonotonicityWitness(const SviProblem& problem, const BlockProfile& x,
                           const BlockProfile& y) {
  return TraceProduct(x - y, problem.Evaluate(x) - problem.Evaluate(y));
}

SviProblem QuadraticTestProblem(BlockProfile b, SpectraSet set, NoiseModel noise) {
  if (!Conforms(b, set)) throw DomainError("quadratic test problem: B does not conform");
  double bound = 0.0;
  Eigen::Index widest = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    bound = std::max(bound, set[i].bound + SpectralNorm(b[i]));
    widest = std::max(widest, set[i].dim);
  }
  // sqrt(E||F + Z||^2) <= ||F|| + sqrt(E||Z||_F^2) = ||F|| + sigma n / sqrt(2).
  if (noise.active()) bound += noise.sigma * static_cast<double>(widest) / std::sqrt(2.0);
  Mapping mapping = [b = std::move(b)](const BlockProfile& x) { return x - b; };
  return SviProblem(std::move(set), std::move(mapping), noise, bound, "quadratic X - B");
}

}  // namespace spectra_svi
