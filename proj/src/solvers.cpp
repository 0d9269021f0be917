#include "spectra_svi/solvers.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "spectra_svi/entropy_mirror.hpp"
#include "spectra_svi/error.hpp"
#include "spectra_svi/matrix_io.hpp"

namespace spectra_svi {

namespace {

constexpr double kGapFloor = -1e-8;

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

StepSchedule StepSchedule::ConstantRateOptimal(long horizon) {
  if (horizon < 1) throw DomainError("rate-optimal schedule needs a horizon T >= 1");
  return {Kind::kConstantRateOptimal, 0.0, horizon};
}

StepSchedule StepSchedule::Constant(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("constant stepsize must be > 0");
  return {Kind::kConstant, eta, 0};
}

std::string StepSchedule::Describe() const {
  switch (kind) {
    case Kind::kConstantRateOptimal:
      return "rate-optimal(T=" + std::to_string(horizon) + ")";
    case Kind::kConstant:
      return "constant(" + FormatDouble(eta) + ")";
    case Kind::kHarmonicSqrt:
      return "harmonic-sqrt";
    case Kind::kHarmonic:
      return "harmonic";
  }
  return "?";
}

double RateOptimalStepsize(double oracle_bound, Eigen::Index total_dim, long horizon) {
  if (!(oracle_bound > 0.0)) throw DomainError("rate-optimal stepsize needs C > 0");
  if (total_dim < 2) throw DomainError("rate-optimal stepsize needs n >= 2 (log 1 = 0)");
  if (horizon < 1) throw DomainError("rate-optimal stepsize needs T >= 1");
  return std::sqrt(std::log(static_cast<double>(total_dim)) / static_cast<double>(horizon)) /
         oracle_bound;
}

StepSequence::StepSequence(const StepSchedule& schedule, const SviProblem& problem)
    : kind_(schedule.kind) {
  if (kind_ == StepSchedule::Kind::kConstant) constant_ = schedule.eta;
  if (kind_ == StepSchedule::Kind::kConstantRateOptimal) {
    constant_ = RateOptimalStepsize(problem.oracle_bound(), problem.set().TotalDim(),
                                 schedule.horizon);
  }
}

double StepSequence::operator()(long t) const {
  switch (kind_) {
    case StepSchedule::Kind::kConstantRateOptimal:
    case StepSchedule::Kind::kConstant:
      return constant_;
    case StepSchedule::Kind::kHarmonicSqrt:
      return 1.0 / std::sqrt(static_cast<double>(t + 1));
    case StepSchedule::Kind::kHarmonic:
      return 1.0 / static_cast<double>(t + 1);
  }
  return 0.0;
}

const char* ToString(Method method) {
  switch (method) {
    case Method::kAmSmd:
      return "AM-SMD";
    case Method::kMSmd:
      return "M-SMD";
    case Method::kMel:
      return "MEL";
  }
  return "?";
}

StepSchedule SolverConfig::ResolvedSchedule() const {
  if (schedule) return *schedule;
  return method == Method::kMel ? StepSchedule::Harmonic() : StepSchedule::HarmonicSqrt();
}

BlockProfile MirrorPrimal(const BlockProfile& dual, const SpectraSet& set) {
  if (!Conforms(dual, set)) throw DomainError("mirror step: dual does not conform to the set");
  BlockProfile x;
  x.blocks.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i].mode == TraceMode::kEquals) {
      x.blocks.push_back(GibbsMap(dual[i]) * set[i].bound);
    } else {
      x.blocks.push_back(GibbsMapBounded(dual[i], set[i].bound));
    }
  }
  return x;
}

MirrorStepResult MirrorStep(const BlockProfile& dual, const BlockProfile& phi, double eta,
                            const SpectraSet& set) {
  if (!(eta >= 0.0)) throw DomainError("mirror step: eta must be >= 0");
  MirrorStepResult r;
  r.dual = dual - eta * phi;
  r.primal = MirrorPrimal(r.dual, set);
  return r;
}

AveragingState AveragingState::Start(BlockProfile x0, double eta0) {
  if (!(eta0 > 0.0)) throw DomainError("averaging needs a positive initial weight");
  return {eta0, std::move(x0)};
}

AveragingState UpdateAverage(const AveragingState& state, const BlockProfile& x_next,
                             double eta_next) {
  if (!(eta_next > 0.0)) throw DomainError("averaging weight must be positive");
  AveragingState next;
  next.gamma = state.gamma + eta_next;
  next.average = (state.gamma * state.average + eta_next * x_next) * (1.0 / next.gamma);
  return next;
}

namespace {

std::string EchoConfig(const SviProblem& problem, const SolverConfig& config,
                       const StepSchedule& schedule) {
  std::ostringstream o;
  o << "method = " << ToString(config.method) << '\n';
  if (config.method == Method::kMel) o << "lambda = " << FormatDouble(config.lambda) << '\n';
  o << "iterations = " << config.iterations << '\n'
    << "schedule = " << schedule.Describe() << '\n'
    << "gap_every = " << config.gap_every << '\n'
    << "seed = " << config.seed << '\n'
    << "problem = " << problem.description() << '\n'
    << "noise = " << problem.noise().Describe() << '\n'
    << "oracle_bound_C = " << FormatDouble(problem.oracle_bound())
    << (problem.oracle_bound_estimated() ? " (estimated, full oracle)" : " (configured)") << '\n'
    << "rate_optimal_dimension = total (sum of block dims = " << problem.set().TotalDim() << ")\n"
    << "initialization = Y_0 = 0, X_0 = mirror(Y_0)\n"
    << "gap_point = " << (config.method == Method::kAmSmd ? "averaged iterate" : "last iterate")
    << '\n'
    << "gap_mapping = original F\n";
  return o.str();
}

}  // namespace

RunResult Run(const SviProblem& problem, const SolverConfig& config,
              const IterationObserver& observer) {
  if (config.iterations < 1) throw DomainError("solver needs iterations >= 1");
  if (config.gap_every < 1) throw DomainError("solver needs gap_every >= 1");
  if (!(config.lambda >= 0.0)) throw DomainError("MEL lambda must be >= 0");

  const auto setup_start = Clock::now();
  const SpectraSet& set = problem.set();
  const StepSchedule schedule = config.ResolvedSchedule();
  const SviProblem iterated =
      config.method == Method::kMel ? problem.Regularized(config.lambda) : problem;
  const StepSequence eta(schedule, iterated);
  const bool averaging = config.method == Method::kAmSmd;

  RunResult result;
  result.seed = config.seed;
  result.config_echo = EchoConfig(problem, config, schedule);
  RngStream rng(config.seed);

  BlockProfile dual = BlockProfile::Zero(set);
  BlockProfile primal = MirrorPrimal(dual, set);
  std::optional<AveragingState> avg;
  if (averaging) avg = AveragingState::Start(primal, eta(0));
  result.timings.setup_ms = MillisSince(setup_start);

  const auto loop_start = Clock::now();
  auto reported = [&]() -> const BlockProfile& { return averaging ? avg->average : primal; };

  auto record_gap = [&](long t) {
    const auto gap_start = Clock::now();
    const BlockProfile& x = reported();
    const std::string violation = FeasibilityViolation(x, set);
    if (!violation.empty()) {
      throw NumericalFailure("iteration " + std::to_string(t) + ": infeasible point: " + violation);
    }
    const double gap = StrongGap(problem, x);
    if (!(gap >= kGapFloor)) {
      throw NumericalFailure("iteration " + std::to_string(t) + ": strong gap " +
                             FormatDouble(gap) + " below tolerance");
    }
    result.gap_trace.push_back({t, gap, MillisSince(loop_start)});
    result.timings.gap_ms += MillisSince(gap_start);
  };

  try {
    if (observer) observer(0, reported());
    if (config.record_iterates) result.iterates.push_back(reported());
    record_gap(0);
    for (long t = 0; t < config.iterations; ++t) {
      const OracleSample sample = SampleOracle(iterated, primal, rng);
      MirrorStepResult step = MirrorStep(dual, sample.phi, eta(t), set);
      dual = std::move(step.dual);
      primal = std::move(step.primal);
      if (averaging) avg = UpdateAverage(*avg, primal, eta(t + 1));

      const long done = t + 1;
      if (observer) observer(done, reported());
      if (config.record_iterates) result.iterates.push_back(reported());
      if (done % config.gap_every == 0 || done == config.iterations) record_gap(done);
    }
  } catch (const NumericalFailure& e) {
    result.error = e.what();
  }
  result.final_point = reported();
  result.timings.iterate_ms = MillisSince(loop_start) - result.timings.gap_ms;
  return result;
}

}  // namespace spectra_svi
