#include "spectra_svi/experiment/grid.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <tuple>

#include "spectra_svi/error.hpp"
#include "spectra_svi/matrix_io.hpp"

namespace spectra_svi::experiment {

namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t HashKey(const std::string& key) { return SplitMix64(Fnv1a(key)); }

struct PathOutcome {
  std::vector<GapRecord> gaps;
  std::vector<ThroughputRecord> throughput;
  std::optional<CellFailure> failure;
};

PathOutcome RunPath(const ExperimentConfig& config, const mimo::NetworkTopology& topology,
                    const GridCell& cell, int path) {
  PathOutcome out;
  const std::string method = ToString(cell.method);
  try {
    RngStream channel_rng(ChannelSeed(config.base_seed, cell.antennas, path,
                                      config.resample_channels));
    mimo::ChannelSet channels = mimo::SampleChannels(topology, cell.antennas, channel_rng);
    const SviProblem problem = mimo::GameToSvi(topology, channels, cell.sigma);

    SolverConfig solver;
    solver.method = cell.method;
    solver.lambda = cell.lambda;
    solver.iterations = config.iterations;
    solver.schedule = cell.schedule;
    solver.gap_every = config.gap_every;
    solver.seed = PathSeed(config.base_seed, cell, path);

    IterationObserver observer;
    if (config.record_throughput) {
      observer = [&](long t, const BlockProfile& x) {
        for (std::size_t i = 0; i < channels.users(); ++i) {
          out.throughput.push_back(
              {method, static_cast<int>(i + 1), path, t, mimo::Throughput(channels, x, i)});
        }
      };
    }
    const RunResult run = Run(problem, solver, observer);
    for (const GapPoint& g : run.gap_trace) {
      out.gaps.push_back({method, static_cast<long>(cell.antennas.tx),
                          static_cast<long>(cell.antennas.rx), cell.sigma, cell.lambda, path,
                          g.iteration, g.gap, config.record_elapsed ? g.elapsed_ms : 0.0});
    }
    if (run.error) out.failure = CellFailure{DescribeCell(cell), path, *run.error};
  } catch (const Error& e) {
    out.failure = CellFailure{DescribeCell(cell), path, e.what()};
  }
  return out;
}

}  // namespace

std::vector<GridCell> ExpandGrid(const ExperimentConfig& config) {
  std::vector<GridCell> cells;
  for (const mimo::Antennas& a : config.antennas) {
    for (double sigma : config.sigmas) {
      for (const MethodSpec& m : config.methods) {
        if (m.method == Method::kMel) {
          for (double lambda : m.lambdas) cells.push_back({m.method, m.schedule, lambda, a, sigma});
        } else {
          cells.push_back({m.method, m.schedule, 0.0, a, sigma});
        }
      }
    }
  }
  return cells;
}

std::string DescribeCell(const GridCell& cell) {
  std::string s = std::string(ToString(cell.method)) + "|" + FormatDouble(cell.lambda) + "|" +
                  std::to_string(cell.antennas.tx) + "|" + std::to_string(cell.antennas.rx) +
                  "|" + FormatDouble(cell.sigma);
  return s;
}

std::uint64_t PathSeed(std::uint64_t base_seed, const GridCell& cell, int path) {
  return base_seed ^ HashKey("noise|" + DescribeCell(cell) + "|" + std::to_string(path));
}

std::uint64_t ChannelSeed(std::uint64_t base_seed, mimo::Antennas antennas, int path,
                          bool resample) {
  const std::string key = "channels|" + std::to_string(antennas.tx) + "|" +
                          std::to_string(antennas.rx) + "|" +
                          (resample ? std::to_string(path) : std::string("fixed"));
  return base_seed ^ HashKey(key);
}

mimo::NetworkTopology ResolveTopology(const std::string& selector) {
  if (selector == "canonical7") return mimo::CanonicalTopology();
  try {
    return mimo::LoadTopology(selector);
  } catch (const DomainError& e) {
    throw ConfigError("topology", 0, e.what());
  }
}

void SortRecords(std::vector<GapRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const GapRecord& a, const GapRecord& b) {
    return std::tie(a.method, a.m, a.n, a.sigma, a.lambda, a.path, a.iter) <
           std::tie(b.method, b.m, b.n, b.sigma, b.lambda, b.path, b.iter);
  });
}

GridResult RunGrid(const ExperimentConfig& config, unsigned threads) {
  config.Validate();
  const mimo::NetworkTopology topology = ResolveTopology(config.topology);
  const std::vector<GridCell> cells = ExpandGrid(config);

  struct Task {
    std::size_t cell;
    int path;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int p = 0; p < config.sample_paths; ++p) tasks.push_back({c, p});
  }
  std::vector<PathOutcome> outcomes(tasks.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      outcomes[k] = RunPath(config, topology, cells[tasks[k].cell], tasks[k].path);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  GridResult result;
  for (PathOutcome& o : outcomes) {
    result.gaps.insert(result.gaps.end(), o.gaps.begin(), o.gaps.end());
    result.throughput.insert(result.throughput.end(), o.throughput.begin(), o.throughput.end());
    if (o.failure) result.failures.push_back(std::move(*o.failure));
  }
  SortRecords(result.gaps);
  std::stable_sort(result.throughput.begin(), result.throughput.end(),
                   [](const ThroughputRecord& a, const ThroughputRecord& b) {
                     return std::tie(a.method, a.player, a.path, a.iter) <
                            std::tie(b.method, b.player, b.path, b.iter);
                   });
  return result;
}

std::vector<MeanGapRecord> MeanOverPaths(const std::vector<GapRecord>& records) {
  using Key = std::tuple<std::string, long, long, double, double, long>;
  std::map<Key, std::pair<double, int>> acc;
  for (const GapRecord& r : records) {
    auto& [sum, count] = acc[Key{r.method, r.m, r.n, r.sigma, r.lambda, r.iter}];
    sum += r.gap;
    ++count;
  }
  std::vector<MeanGapRecord> out;
  out.reserve(acc.size());
  for (const auto& [key, v] : acc) {
    const auto& [method, m, n, sigma, lambda, iter] = key;
    out.push_back({method, m, n, sigma, lambda, iter, v.first / v.second, v.second});
  }
  return out;
}

}  // namespace spectra_svi::experiment
