#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spectra_svi/mimo_game.hpp"
#include "spectra_svi/solvers.hpp"

namespace spectra_svi::experiment {

struct MethodSpec {
  Method method = Method::kAmSmd;
  StepSchedule schedule;
  std::vector<double> lambdas;  // MEL only
};

/// One experiment grid: antenna pairs x sigmas x methods (x lambdas).
struct ExperimentConfig {
  std::string name = "experiment";
  std::string topology = "canonical7";  // or a path to a distance-matrix file
  std::vector<mimo::Antennas> antennas;
  std::vector<double> sigmas;
  std::vector<MethodSpec> methods;
  long iterations = 0;
  int sample_paths = 1;
  long gap_every = 1;
  std::uint64_t base_seed = 0;
  bool resample_channels = true;
  bool record_throughput = false;
  bool record_elapsed = false;
  std::string output_dir;

  /// Throws ConfigError if any list is empty or a count is out of range.
  void Validate() const;
};

/// Parses the `key = value` / `[section]` format documented in README.md.
/// Unknown keys, malformed values and missing required keys raise
/// ConfigError with the key and line number.
ExperimentConfig ParseConfig(std::istream& in);
ExperimentConfig ParseConfigString(std::string_view text);
ExperimentConfig LoadConfig(const std::string& path);

/// Built-in presets: "demo", "paper-grid", "stability".
ExperimentConfig PresetConfig(std::string_view name);
std::string_view PresetText(std::string_view name);

/// Parses "harmonic-sqrt", "harmonic", "rate-optimal" or "constant:<eta>".
StepSchedule ParseSchedule(std::string_view text, long iterations);

/// Resolved configuration plus every interpretation flag in effect.
std::string EchoConfig(const ExperimentConfig& config);

}  // namespace spectra_svi::experiment
