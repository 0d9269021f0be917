#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectra_svi/experiment/config.hpp"

namespace spectra_svi::experiment {

/// One (method, lambda, m, n, sigma) combination of the grid.
struct GridCell {
  Method method = Method::kAmSmd;
  StepSchedule schedule;
  double lambda = 0.0;
  mimo::Antennas antennas;
  double sigma = 0.0;
};

struct GapRecord {
  std::string method;
  long m = 0;
  long n = 0;
  double sigma = 0.0;
  double lambda = 0.0;
  int path = 0;
  long iter = 0;
  double gap = 0.0;
  double elapsed_ms = 0.0;

  friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

/// Per-player throughput R_i at the reported point, players numbered from 1.
struct ThroughputRecord {
  std::string method;
  int player = 0;
  int path = 0;
  long iter = 0;
  double rate = 0.0;
};

struct CellFailure {
  std::string cell;
  int path = 0;
  std::string message;
};

struct GridResult {
  std::vector<GapRecord> gaps;              // sorted, see SortRecords
  std::vector<ThroughputRecord> throughput; // sorted (method, player, path, iter)
  std::vector<CellFailure> failures;
};

/// Cells in config order: antennas x sigmas x methods x lambdas.
std::vector<GridCell> ExpandGrid(const ExperimentConfig& config);

std::string DescribeCell(const GridCell& cell);

/// Noise stream seed of one sample path: base_seed XOR hash(cell, path).
std::uint64_t PathSeed(std::uint64_t base_seed, const GridCell& cell, int path);

/// Channel draw seed. Depends on (m, n) and, when channels are resampled,
/// on the path; never on method or sigma, so every method in a path sees the
/// same network.
std::uint64_t ChannelSeed(std::uint64_t base_seed, mimo::Antennas antennas, int path,
                          bool resample);

/// Runs every (cell, path) pair. Work is spread over `threads` workers (0 =
/// hardware concurrency); the result does not depend on the thread count.
GridResult RunGrid(const ExperimentConfig& config, unsigned threads = 1);

/// Sort by (method, m, n, sigma, lambda, path, iter).
void SortRecords(std::vector<GapRecord>& records);

struct MeanGapRecord {
  std::string method;
  long m = 0;
  long n = 0;
  double sigma = 0.0;
  double lambda = 0.0;
  long iter = 0;
  double mean_gap = 0.0;
  int paths = 0;
};

/// Arithmetic mean of the gap over sample paths, per (cell, iter).
std::vector<MeanGapRecord> MeanOverPaths(const std::vector<GapRecord>& records);

/// Resolves the topology selector ("canonical7" or a file path).
mimo::NetworkTopology ResolveTopology(const std::string& selector);

}  // namespace spectra_svi::experiment
