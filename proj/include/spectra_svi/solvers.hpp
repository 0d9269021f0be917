#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spectra_svi/block_profile.hpp"
#include "spectra_svi/svi_problem.hpp"

namespace spectra_svi {

/// Stepsize sequence eta_t, t = 0, 1, ... (zero-based).
struct StepSchedule {
  enum class Kind { kConstantRateOptimal, kConstant, kHarmonicSqrt, kHarmonic };

  Kind kind = Kind::kHarmonicSqrt;
  double eta = 0.0;   // kConstant
  long horizon = 0;   // kConstantRateOptimal

  /// eta = (1/C) sqrt(log n / T), C and n taken from the problem at run time.
  static StepSchedule ConstantRateOptimal(long horizon);
  static StepSchedule Constant(double eta);
  /// eta_t = 1 / sqrt(t + 1)
  static StepSchedule HarmonicSqrt() { return {Kind::kHarmonicSqrt, 0.0, 0}; }
  /// eta_t = 1 / (t + 1)
  static StepSchedule Harmonic() { return {Kind::kHarmonic, 0.0, 0}; }

  std::string Describe() const;
};

/// (1/C) sqrt(log n / T). Requires C > 0, n >= 2, T >= 1 (DomainError).
double RateOptimalStepsize(double oracle_bound, Eigen::Index total_dim, long horizon);

/// A schedule resolved against a problem; callable as eta(t).
class StepSequence {
 public:
  StepSequence(const StepSchedule& schedule, const SviProblem& problem);
  double operator()(long t) const;

 private:
  StepSchedule::Kind kind_;
  double constant_ = 0.0;
};

enum class Method { kAmSmd, kMSmd, kMel };

const char* ToString(Method method);

struct SolverConfig {
  Method method = Method::kAmSmd;
  double lambda = 0.0;  // MEL regularization weight
  long iterations = 1;
  /// Empty selects the method default: HarmonicSqrt for AM-SMD / M-SMD,
  /// Harmonic for MEL.
  std::optional<StepSchedule> schedule;
  long gap_every = 1;
  std::uint64_t seed = 0;
  bool record_iterates = false;

  StepSchedule ResolvedSchedule() const;
};

/// X_{t+1} from Y_{t+1}: p * GibbsMap (TraceEquals) or GibbsMapBounded
/// (TraceAtMost), blockwise.
BlockProfile MirrorPrimal(const BlockProfile& dual, const SpectraSet& set);

struct MirrorStepResult {
  BlockProfile dual;
  BlockProfile primal;
};

/// Y_next = Y - eta * phi;  X_next = MirrorPrimal(Y_next).
MirrorStepResult MirrorStep(const BlockProfile& dual, const BlockProfile& phi, double eta,
                            const SpectraSet& set);

/// Stepsize-weighted running average of the primal iterates.
struct AveragingState {
  double gamma = 0.0;  // sum of weights so far
  BlockProfile average;

  static AveragingState Start(BlockProfile x0, double eta0);
};

/// Gamma' = Gamma + eta;  Xbar' = (Gamma Xbar + eta X) / Gamma'.
AveragingState UpdateAverage(const AveragingState& state, const BlockProfile& x_next,
                             double eta_next);

struct GapPoint {
  long iteration = 0;
  double gap = 0.0;
  double elapsed_ms = 0.0;
};

struct PhaseTimings {
  double setup_ms = 0.0;
  double iterate_ms = 0.0;
  double gap_ms = 0.0;
};

struct RunResult {
  /// Xbar_T for AM-SMD, X_T otherwise.
  BlockProfile final_point;
  std::vector<GapPoint> gap_trace;
  PhaseTimings timings;
  std::string config_echo;
  std::uint64_t seed = 0;
  /// Set when a numerical failure aborted the run; gap_trace is partial.
  std::optional<std::string> error;
  /// Reported point at every iteration when record_iterates is set.
  std::vector<BlockProfile> iterates;
};

/// Called after every iteration with the point the method reports (Xbar_t for
/// AM-SMD, X_t otherwise), including t = 0.
using IterationObserver = std::function<void(long iteration, const BlockProfile& reported)>;

/// Runs AM-SMD, M-SMD or MEL. Starts from Y_0 = 0, X_0 = MirrorPrimal(0).
/// MEL iterates on F + lambda X; gaps are always measured against F.
RunResult Run(const SviProblem& problem, const SolverConfig& config,
              const IterationObserver& observer = {});

}  // namespace spectra_svi
