#include "spectra_svi/experiment/check_suite.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "spectra_svi/entropy_mirror.hpp"
#include "spectra_svi/error.hpp"
#include "spectra_svi/svi_problem.hpp"
#include "spectra_svi/verification/oracles.hpp"

namespace spectra_svi::checks {

namespace {

std::string Sci(double v) {
  std::ostringstream o;
  o.precision(3);
  o << std::scientific << v;
  return o.str();
}

CheckOutcome Outcome(std::string name, int failures, int trials, const std::string& extra) {
  CheckOutcome o;
  o.name = std::move(name);
  o.passed = failures == 0;
  o.detail = std::to_string(failures) + " failures / " + std::to_string(trials) + " trials" +
             (extra.empty() ? "" : ", " + extra);
  return o;
}

Eigen::Index CycleDim(int k) {
  static constexpr Eigen::Index kDims[] = {2, 4, 8};
  return kDims[k % 3];
}

SpectraSet MixedSet() {
  return SpectraSet({{2, 1.0, TraceMode::kEquals}, {3, 2.0, TraceMode::kAtMost},
                     {2, 0.5, TraceMode::kAtMost}});
}

}  // namespace

HermitianMatrix RandomHermitianWithSpectrum(const RealVector& spectrum, RngStream& rng) {
  const Eigen::Index n = spectrum.size();
  const ComplexMatrix g = RandomComplexGaussian(n, n, 1.0, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  return Hermitianize(q * spectrum.cast<Complex>().asDiagonal() * q.adjoint());
}

HermitianMatrix RandomDensity(Eigen::Index n, double min_eigenvalue, RngStream& rng) {
  std::uniform_real_distribution<double> spread(0.5, 4.0);
  const HermitianMatrix g = GibbsMap(RandomHermitian(n, spread(rng), rng));
  const double eps = min_eigenvalue;
  return g * (1.0 - static_cast<double>(n) * eps) + HermitianMatrix::Identity(n) * eps;
}

CheckOutcome GibbsMapFeasibility(int trials, std::uint64_t seed, double magnitude) {
  RngStream rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int failures = 0;
  double worst_min = 0.0, worst_trace = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Eigen::Index n = CycleDim(k);
    RealVector spectrum(n);
    for (Eigen::Index i = 0; i < n; ++i) spectrum(i) = magnitude * unit(rng);
    spectrum(0) = magnitude;
    spectrum(n - 1) = -magnitude;
    const HermitianMatrix x = GibbsMap(RandomHermitianWithSpectrum(spectrum, rng));
    const double lmin = Eig(x).min();
    const double trace_err = std::abs(x.Trace() - 1.0);
    worst_min = std::min(worst_min, lmin);
    worst_trace = std::max(worst_trace, trace_err);
    if (!(lmin >= -1e-10) || !(trace_err <= 1e-10)) ++failures;
  }
  return Outcome("gibbs map feasibility", failures, trials,
                 "min eigenvalue " + Sci(worst_min) + ", max |tr-1| " + Sci(worst_trace));
}

CheckOutcome PinskerInequality(int trials, std::uint64_t seed) {
  RngStream rng(seed);
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const Eigen::Index n = CycleDim(k);
    const HermitianMatrix x = RandomDensity(n, 1e-6, rng);
    const HermitianMatrix y = RandomDensity(n, 1e-6, rng);
    const double tn = TraceNorm(x - y);
    const double slack = VonNeumannDivergence(x, y) - 0.5 * tn * tn;
    worst = std::min(worst, slack);
    if (!(slack >= -1e-8)) ++failures;
  }
  return Outcome("strong convexity (D >= tr-norm^2 / 2)", failures, trials,
                 "min slack " + Sci(worst));
}

CheckOutcome FenchelSmoothness(int trials, std::uint64_t seed) {
  RngStream rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const Eigen::Index n = CycleDim(k);
    const HermitianMatrix x = RandomDensity(n, 0.0, rng);
    const HermitianMatrix y = RandomHermitian(n, 2.0, rng);
    HermitianMatrix z = RandomHermitian(n, 1.0, rng);
    z *= unit(rng) / SpectralNorm(z);
    const double zn = SpectralNorm(z);
    const double lhs = FenchelCoupling(x, y + z);
    const double rhs = FenchelCoupling(x, y) + TraceProduct(z, GibbsMap(y) - x) + zn * zn;
    const double slack = rhs - lhs;
    worst = std::min(worst, slack);
    if (!(slack >= -1e-8)) ++failures;
  }
  return Outcome("fenchel coupling smoothness", failures, trials, "min slack " + Sci(worst));
}

CheckOutcome FenchelBregmanIdentity(int trials, std::uint64_t seed) {
  RngStream rng(seed);
  int failures = 0;
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Eigen::Index n = CycleDim(k);
    const HermitianMatrix q = RandomDensity(n, 0.0, rng);
    const HermitianMatrix y = RandomHermitian(n, 2.0, rng);
    const double err = std::abs(FenchelCoupling(q, y) - VonNeumannDivergence(q, GibbsMap(y)));
    worst = std::max(worst, err);
    if (!(err <= 1e-8)) ++failures;
  }
  return Outcome("fenchel coupling = von Neumann divergence", failures, trials,
                 "max error " + Sci(worst));
}

CheckOutcome GibbsGradientConsistency(int trials, std::uint64_t seed) {
  RngStream rng(seed);
  int failures = 0;
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Eigen::Index n = 2 + k % 3;
    const HermitianMatrix y = RandomHermitian(n, 1.5, rng);
    const HermitianMatrix fd = verification::FiniteDiffGradient(
        [](const HermitianMatrix& m) { return ConjugateEntropy(m); }, y, 1e-5);
    const double err = (fd.matrix() - GibbsMap(y).matrix()).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    if (!(err <= 1e-5)) ++failures;
  }
  return Outcome("gibbs map = gradient of conjugate entropy", failures, trials,
                 "max entry error " + Sci(worst));
}

CheckOutcome StrongGapClosedForm(int trials, std::uint64_t seed) {
  RngStream rng(seed);
  const SpectraSet set = MixedSet();
  BlockProfile b;
  for (const BlockSpec& s : set.blocks()) b.blocks.push_back(RandomHermitian(s.dim, 1.5, rng));
  const SviProblem problem = QuadraticTestProblem(b, set);
  int failures = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_attain = 0.0;
  const int points = std::max(1, trials / 100);
  const int probes_per_point = std::max(1, trials / points);
  for (int k = 0; k < points; ++k) {
    const BlockProfile x = RandomFeasible(set, rng);
    const BlockProfile f = problem.Evaluate(x);
    const double gap = StrongGapFromValue(f, x, set);
    if (!(gap >= -1e-8)) ++failures;
    const BlockProfile zstar = LinearMinimizer(f, set);
    const double attained = TraceProduct(f, x - zstar);
    worst_attain = std::max(worst_attain, std::abs(attained - gap));
    if (!(std::abs(attained - gap) <= 1e-8)) ++failures;
    for (int j = 0; j < probes_per_point; ++j) {
      const BlockProfile z = RandomFeasible(set, rng);
      const double excess = TraceProduct(f, x - z) - gap;
      worst_excess = std::max(worst_excess, excess);
      if (!(excess <= 1e-8)) ++failures;
    }
  }
  return Outcome("closed-form strong gap", failures, points * (probes_per_point + 2),
                 "max sampled excess " + Sci(worst_excess) + ", attainment error " +
                     Sci(worst_attain));
}

CheckOutcome QuadraticMonotonicity(int trials, std::uint64_t seed) {
  RngStream rng(seed);
  const SpectraSet set = MixedSet();
  BlockProfile b;
  for (const BlockSpec& s : set.blocks()) b.blocks.push_back(RandomHermitian(s.dim, 1.0, rng));
  const SviProblem monotone = QuadraticTestProblem(b, set);
  const SviProblem anti(set, [](const BlockProfile& x) { return -1.0 * x; }, NoiseModel::None(),
                        1.0, "anti-monotone -X");
  int failures = 0;
  int anti_violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const BlockProfile x = RandomFeasible(set, rng);
    const BlockProfile y = RandomFeasible(set, rng);
    const double w = MonotonicityWitness(monotone, x, y);
    worst = std::min(worst, w);
    if (!(w >= -1e-8)) ++failures;
    if (MonotonicityWitness(anti, x, y) < -1e-8) ++anti_violations;
  }
  CheckOutcome o = Outcome("monotonicity witness", failures, trials,
                           "min witness " + Sci(worst) + ", anti-fixture violations " +
                               std::to_string(anti_violations));
  if (anti_violations == 0) {
    o.passed = false;
    o.detail += " (anti-fixture was not detected)";
  }
  return o;
}

CheckOutcome OracleNoiseZeroMean(int draws, std::uint64_t seed) {
  RngStream rng(seed);
  constexpr Eigen::Index n = 3;
  constexpr double sigma = 1.0;
  const SpectraSet set = SpectraSet::Uniform(1, n, 1.0, TraceMode::kEquals);
  const NoiseModel noise = NoiseModel::HermitianGaussian(sigma);
  ComplexMatrix mean = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < draws; ++k) mean += SampleNoise(set, noise, rng)[0].matrix();
  mean /= static_cast<double>(draws);
  const double norm = mean.norm();
  const double limit = 5.0 * sigma * static_cast<double>(n) / std::sqrt(static_cast<double>(draws));
  CheckOutcome o;
  o.name = "oracle noise has zero mean";
  o.passed = norm <= limit;
  o.detail = "||mean||_F = " + Sci(norm) + " (limit " + Sci(limit) + ", " +
             std::to_string(draws) + " draws)";
  return o;
}

CheckOutcome ExpLogRoundTrip(int trials, std::uint64_t seed) {
  RngStream rng(seed);
  std::uniform_real_distribution<double> unit(-5.0, 5.0);
  int failures = 0;
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const Eigen::Index n = CycleDim(k);
    RealVector spectrum(n);
    for (Eigen::Index i = 0; i < n; ++i) spectrum(i) = unit(rng);
    const HermitianMatrix e = MatrixExp(RandomHermitianWithSpectrum(spectrum, rng));
    const HermitianMatrix back = MatrixExp(MatrixLog(e));
    const double rel = (back.matrix() - e.matrix()).norm() / e.matrix().norm();
    worst = std::max(worst, rel);
    if (!(rel <= 1e-8)) ++failures;
  }
  return Outcome("exp(log(exp A)) round trip", failures, trials, "max rel error " + Sci(worst));
}

std::vector<CheckOutcome> RunCheckSuite(double scale, std::uint64_t seed) {
  auto count = [scale](int base) { return std::max(1, static_cast<int>(base * scale)); };
  std::vector<CheckOutcome> out;
  out.push_back(GibbsMapFeasibility(count(1000), seed + 1));
  out.push_back(PinskerInequality(count(1000), seed + 2));
  out.push_back(FenchelSmoothness(count(1000), seed + 3));
  out.push_back(FenchelBregmanIdentity(count(100), seed + 4));
  out.push_back(GibbsGradientConsistency(count(20), seed + 5));
  out.push_back(StrongGapClosedForm(count(1000), seed + 6));
  out.push_back(QuadraticMonotonicity(count(1000), seed + 7));
  out.push_back(OracleNoiseZeroMean(count(10000), seed + 8));
  out.push_back(ExpLogRoundTrip(count(200), seed + 9));
  return out;
}

bool PrintOutcomes(std::ostream& out, const std::vector<CheckOutcome>& outcomes) {
  bool all = true;
  for (const CheckOutcome& o : outcomes) {
    out << (o.passed ? "[PASS] " : "[FAIL] ") << o.name << ": " << o.detail << '\n';
    all = all && o.passed;
  }
  return all;
}

}  // namespace spectra_svi::checks
