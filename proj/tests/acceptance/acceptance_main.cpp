// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: spectra_svi_acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spectra_svi/entropy_mirror.hpp"
#include "spectra_svi/error.hpp"
#include "spectra_svi/experiment/check_suite.hpp"
#include "spectra_svi/experiment/cli.hpp"
#include "spectra_svi/experiment/config.hpp"
#include "spectra_svi/experiment/csv.hpp"
#include "spectra_svi/experiment/grid.hpp"
#include "spectra_svi/mimo_game.hpp"
#include "spectra_svi/solvers.hpp"
#include "spectra_svi/svi_problem.hpp"
#include "spectra_svi/verification/oracles.hpp"

namespace {

using namespace spectra_svi;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Verdict FromCheck(const checks::CheckOutcome& o) { return {o.passed, o.detail}; }

HermitianMatrix Rotated(const RealVector& spectrum, std::uint64_t seed) {
  RngStream rng(seed);
  return checks::RandomHermitianWithSpectrum(spectrum, rng);
}

Verdict MirrorMapSuite() {
  const auto start = Clock::now();
  checks::CheckOutcome o = checks::GibbsMapFeasibility(10000, 101, 1e6);
  const double secs = Seconds(start);
  return {o.passed && secs < 30.0, o.detail + ", " + Num(secs) + " s (limit 30 s)"};
}

Verdict StrongConvexity() { return FromCheck(checks::PinskerInequality(1000, 102)); }
Verdict FenchelSmoothness() { return FromCheck(checks::FenchelSmoothness(1000, 103)); }
Verdict FenchelBregman() { return FromCheck(checks::FenchelBregmanIdentity(100, 104)); }

Verdict GradientOracle() {
  const mimo::NetworkTopology topology = mimo::CanonicalTopology();
  RngStream rng(105);
  int failures = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const mimo::ChannelSet channels = mimo::SampleChannels(topology, {2, 2}, rng);
    const SpectraSet set = mimo::GameStrategySet(topology, channels);
    const BlockProfile x = RandomFeasible(set, rng);
    for (std::size_t i = 0; i < channels.users(); ++i) {
      const HermitianMatrix analytic = mimo::ThroughputGradient(channels, x, i);
      const HermitianMatrix fd = verification::FiniteDiffGradient(
          [&](const HermitianMatrix& xi) {
            BlockProfile y = x;
            y.blocks[i] = xi;
            return mimo::Throughput(channels, y, i);
          },
          x[i], 1e-5);
      const double rel = (fd.matrix() - analytic.matrix()).norm() /
                         std::max(analytic.matrix().norm(), 1e-12);
      worst = std::max(worst, rel);
      if (!(rel <= 1e-4)) ++failures;
    }
  }
  return {failures == 0, std::to_string(failures) + " failures / 140 player gradients, max rel error " +
                             Num(worst) + " (limit 1e-4)"};
}

Verdict Monotonicity() {
  const mimo::NetworkTopology topology = mimo::CanonicalTopology();
  RngStream channel_rng(106);
  const mimo::ChannelSet channels = mimo::SampleChannels(topology, {2, 2}, channel_rng);
  const SviProblem game = mimo::GameToSvi(topology, channels, 0.0);
  const SviProblem anti(game.set(), [](const BlockProfile& x) { return -1.0 * x; },
                        NoiseModel::None(), 1.0, "anti-monotone -X");
  RngStream rng(107);
  int failures = 0;
  int anti_detected = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 1000; ++k) {
    const BlockProfile x = RandomFeasible(game.set(), rng);
    const BlockProfile y = RandomFeasible(game.set(), rng);
    const double w = MonotonicityWitness(game, x, y);
    worst = std::min(worst, w);
    if (!(w >= -1e-8)) ++failures;
    if (MonotonicityWitness(anti, x, y) < -1e-8) ++anti_detected;
  }
  return {failures == 0 && anti_detected > 0,
          std::to_string(failures) + " violations / 1000 pairs, min witness " + Num(worst) +
              "; anti-fixture flagged on " + std::to_string(anti_detected) + " pairs"};
}

Verdict KnownSolution() {
  const auto start = Clock::now();
  RealVector spectrum(4);
  spectrum << 0.6, 0.35, 0.25, 0.1;
  const HermitianMatrix b = Rotated(spectrum, 108);
  const SpectraSet set = SpectraSet::Uniform(1, 4, 1.0, TraceMode::kEquals);
  BlockProfile bp;
  bp.blocks.push_back(b);
  const SviProblem problem = QuadraticTestProblem(bp, set);
  const HermitianMatrix target = verification::ProjectSpectrahedron(b, 1.0, TraceMode::kEquals);

  SolverConfig config;
  config.method = Method::kAmSmd;
  config.iterations = 5000;
  config.schedule = StepSchedule::HarmonicSqrt();
  config.gap_every = 5000;
  const RunResult run = Run(problem, config);
  if (run.error) return {false, "solver failed: " + *run.error};
  const double dist = TraceNorm(run.final_point[0] - target);
  const double secs = Seconds(start);
  return {dist <= 5e-2 && secs < 10.0,
          "||Xbar_T - proj(B)||_tr = " + Num(dist) + " (limit 5e-2), " + Num(secs) + " s"};
}

Verdict RateCheck() {
  RealVector spectrum(2);
  spectrum << 0.6, 0.2;
  const SpectraSet set = SpectraSet::Uniform(1, 2, 1.0, TraceMode::kEquals);
  BlockProfile bp;
  bp.blocks.push_back(Rotated(spectrum, 109));
  const SviProblem problem = QuadraticTestProblem(bp, set, NoiseModel::HermitianGaussian(1.0));
  const double c = problem.oracle_bound();

  const std::vector<long> horizons = {100, 1000, 10000};
  std::vector<double> log_t, log_gap;
  bool envelope_ok = true;
  std::ostringstream detail;
  for (long t : horizons) {
    double sum = 0.0;
    for (int s = 0; s < 10; ++s) {
      SolverConfig config;
      config.method = Method::kAmSmd;
      config.iterations = t;
      config.schedule = StepSchedule::ConstantRateOptimal(t);
      config.gap_every = t;
      config.seed = 1000 + static_cast<std::uint64_t>(s);
      const RunResult run = Run(problem, config);
      if (run.error) return {false, "solver failed: " + *run.error};
      sum += run.gap_trace.back().gap;
    }
    const double mean = sum / 10.0;
    const double bound = 3.0 * c * std::sqrt(std::log(2.0) / static_cast<double>(t));
    envelope_ok = envelope_ok && mean <= 10.0 * bound;
    log_t.push_back(std::log(static_cast<double>(t)));
    log_gap.push_back(std::log(mean));
    detail << "T=" << t << ": " << Num(mean) << " (10x bound " << Num(10.0 * bound) << "); ";
  }
  const double mt = std::accumulate(log_t.begin(), log_t.end(), 0.0) / 3.0;
  const double mg = std::accumulate(log_gap.begin(), log_gap.end(), 0.0) / 3.0;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    num += (log_t[k] - mt) * (log_gap[k] - mg);
    den += (log_t[k] - mt) * (log_t[k] - mt);
  }
  const double slope = num / den;
  detail << "slope " << Num(slope) << " (want [-0.7, -0.3]), C = " << Num(c);
  return {slope >= -0.7 && slope <= -0.3 && envelope_ok, detail.str()};
}

Verdict GapComparison() {
  const auto start = Clock::now();
  const experiment::ExperimentConfig config = experiment::ParseConfigString(R"(
[experiment]
name = gap-small
topology = canonical7
antennas = 2x2
sigmas = 0.5, 5
iterations = 2000
sample_paths = 5
gap_every = 2000
base_seed = 20190601

[method am-smd]
schedule = harmonic-sqrt

[method m-smd]
schedule = harmonic-sqrt

[method mel]
schedule = harmonic
lambdas = 0.1, 0.5, 1
)");
  const experiment::GridResult result = experiment::RunGrid(config, 0);
  if (!result.failures.empty()) return {false, "cell failure: " + result.failures[0].message};
  std::map<std::pair<std::string, double>, double> final_gap;
  for (const experiment::MeanGapRecord& r : experiment::MeanOverPaths(result.gaps)) {
    if (r.iter == config.iterations && r.lambda == 0.0) final_gap[{r.method, r.sigma}] = r.mean_gap;
  }
  bool ok = true;
  std::ostringstream detail;
  for (double sigma : config.sigmas) {
    const double am = final_gap.at({"AM-SMD", sigma});
    const double m = final_gap.at({"M-SMD", sigma});
    ok = ok && am <= m;
    detail << "sigma=" << sigma << ": AM-SMD " << Num(am) << " vs M-SMD " << Num(m) << "; ";
  }
  const double secs = Seconds(start);
  detail << Num(secs) << " s";
  return {ok && secs < 600.0, detail.str()};
}

Verdict Stability() {
  experiment::ExperimentConfig config = experiment::PresetConfig("stability");
  config.record_throughput = true;
  const experiment::GridResult result = experiment::RunGrid(config, 0);
  if (!result.failures.empty()) return {false, "cell failure: " + result.failures[0].message};

  // Path-mean trajectory per (method, player), then its spread over the tail.
  const long first = config.iterations - 499;
  std::map<std::pair<std::string, int>, std::vector<double>> mean;
  for (const experiment::ThroughputRecord& r : result.throughput) {
    if (r.iter < first) continue;
    auto& v = mean[{r.method, r.player}];
    v.resize(static_cast<std::size_t>(config.iterations + 1), 0.0);
    v[static_cast<std::size_t>(r.iter)] += r.rate / config.sample_paths;
  }
  auto tail_sd = [&](const std::vector<double>& v) {
    std::vector<double> tail;
    for (long t = first; t <= config.iterations; ++t) {
      tail.push_back(v[static_cast<std::size_t>(t)]);
    }
    const double mu = std::accumulate(tail.begin(), tail.end(), 0.0) / tail.size();
    double ss = 0.0;
    for (double x : tail) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / (tail.size() - 1));
  };
  bool ok = true;
  std::ostringstream detail;
  for (int player = 1; player <= 7; ++player) {
    const double am = tail_sd(mean.at({"AM-SMD", player}));
    const double m = tail_sd(mean.at({"M-SMD", player}));
    ok = ok && am < m;
    detail << "P" << player << " " << Num(am) << "<" << Num(m) << (am < m ? "" : "(!)") << " ";
  }
  return {ok, detail.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Verdict Determinism() {
  const fs::path root = fs::temp_directory_path() / "spectra_svi_acceptance_ac11";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path config_path = root / "tiny.conf";
  std::ofstream(config_path) << std::string_view(R"([experiment]
name = tiny
antennas = 2x2
sigmas = 1
iterations = 50
sample_paths = 1
gap_every = 10
base_seed = 7

[method am-smd]
[method m-smd]
)");
  std::vector<std::string> bodies;
  std::ostringstream sink;
  for (const char* run : {"a", "b"}) {
    const std::string out = (root / run).string();
    std::vector<std::string> args = {"spectra-svi", "run", config_path.string(), "--out", out};
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    const int code = experiment::CliMain(static_cast<int>(argv.size()), argv.data(), sink, sink);
    if (code != 0) return {false, "run exited with " + std::to_string(code)};
    bodies.push_back(Slurp(root / run / "tiny.csv"));
  }
  const bool identical = !bodies[0].empty() && bodies[0] == bodies[1];

  const fs::path golden = fs::path(SPECTRA_SVI_TEST_DATA_DIR) / "golden_gaps.csv";
  const std::string golden_text = Slurp(golden);
  std::ostringstream rewritten;
  experiment::WriteGapCsv(rewritten, experiment::ReadGapCsv(golden.string()));
  const bool round_trip = !golden_text.empty() && rewritten.str() == golden_text;
  const bool header = golden_text.rfind(std::string(experiment::kGapCsvHeader) + "\n", 0) == 0;
  return {identical && round_trip && header,
          std::string("repeat run ") + (identical ? "bitwise identical" : "DIFFERS") +
              ", golden fixture round trip " + (round_trip ? "exact" : "DIFFERS") +
              ", header " + (header ? "pinned" : "WRONG")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"AC1  Gibbs map feasibility, 1e4 duals", MirrorMapSuite},
      {"AC2  entropy strong convexity", StrongConvexity},
      {"AC3  Fenchel coupling smoothness", FenchelSmoothness},
      {"AC4  Fenchel coupling = Bregman divergence", FenchelBregman},
      {"AC5  throughput gradient vs finite differences", GradientOracle},
      {"AC6  MIMO mapping monotonicity", Monotonicity},
      {"AC7  noiseless quadratic converges to projection", KnownSolution},
      {"AC8  O(1/sqrt T) rate on noisy quadratic", RateCheck},
      {"AC9  AM-SMD final gap <= M-SMD (sigma 0.5, 5)", GapComparison},
      {"AC10 AM-SMD throughput steadier than M-SMD", Stability},
      {"AC11 deterministic CSV and golden schema", Determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!selected.empty() && !selected.count(static_cast<int>(k + 1))) continue;
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.passed ? "PASS  " : "FAIL  ") << criteria[k].first << " | " << v.detail
              << std::endl;
    if (!v.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
