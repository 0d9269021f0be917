#include "spectra_svi/experiment/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "spectra_svi/error.hpp"
#include "spectra_svi/experiment/check_suite.hpp"
#include "spectra_svi/experiment/config.hpp"
#include "spectra_svi/experiment/csv.hpp"
#include "spectra_svi/experiment/grid.hpp"
#include "spectra_svi/experiment/svg_plot.hpp"

namespace spectra_svi::experiment {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kCheckSeed = 0x5eed5eedULL;

std::optional<std::uint64_t> SeedFromEnvironment() {
  const char* raw = std::getenv("SPECTRA_SVI_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 0);
  if (errno != 0 || *end != '\0' || raw[0] == '-') {
    throw ConfigError("SPECTRA_SVI_SEED", 0, "not an unsigned integer: '" + std::string(raw) + "'");
  }
  return static_cast<std::uint64_t>(v);
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("output", 0, "cannot write " + path.string());
  f << text;
}

int RunExperiment(ExperimentConfig config, const std::optional<std::string>& out_dir,
                  unsigned threads, std::ostream& out, std::ostream& err) {
  if (const auto seed = SeedFromEnvironment()) config.base_seed = *seed;
  if (out_dir) config.output_dir = *out_dir;
  if (config.output_dir.empty()) config.output_dir = ".";
  config.Validate();

  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("output", 0, "cannot create " + dir.string() + ": " + ec.message());

  WriteText(dir / "config.echo.txt", EchoConfig(config));
  const std::size_t cells = ExpandGrid(config).size();
  out << "running " << cells << " cells x " << config.sample_paths << " paths, T = "
      << config.iterations << '\n';

  const GridResult result = RunGrid(config, threads);

  const fs::path csv = dir / (config.name + ".csv");
  WriteGapCsv(csv.string(), result.gaps);
  {
    std::ofstream f(dir / (config.name + ".summary.csv"));
    WriteSummaryCsv(f, MeanOverPaths(result.gaps));
  }
  const fs::path svg = dir / (config.name + ".svg");
  RenderSvg(svg.string(), result.gaps);
  out << "wrote " << csv.string() << '\n' << "wrote " << svg.string() << '\n';
  if (config.record_throughput) {
    const fs::path tp = dir / (config.name + ".throughput.csv");
    std::ofstream f(tp);
    WriteThroughputCsv(f, result.throughput);
    out << "wrote " << tp.string() << '\n';
  }

  for (const CellFailure& f : result.failures) {
    err << "numerical failure in cell " << f.cell << " path " << f.path << ": " << f.message
        << '\n';
  }
  return result.failures.empty() ? kExitOk : kExitNumericalFailure;
}

}  // namespace

int CliMain(int argc, char** argv) { return CliMain(argc, argv, std::cout, std::cerr); }

int CliMain(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic variational inequalities over spectrahedra"};
  app.require_subcommand(1);

  std::optional<std::string> out_dir;
  unsigned threads = 1;

  auto* run = app.add_subcommand("run", "run an experiment grid");
  std::string config_positional;
  std::string config_flag;
  std::string preset;
  run->add_option("config_file", config_positional, "config file");
  run->add_option("--config", config_flag, "config file");
  run->add_option("--preset", preset, "built-in config")
      ->check(CLI::IsMember({"demo", "paper-grid", "stability"}));
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--threads", threads, "worker threads, 0 = auto");

  auto* demo = app.add_subcommand("demo", "canonical 7-cell network, m = n = 2, sigma = 1");
  demo->add_option("--out", out_dir, "output directory");
  demo->add_option("--threads", threads, "worker threads, 0 = auto");

  auto* check = app.add_subcommand("check", "run the invariant suite");
  double scale = 1.0;
  std::uint64_t check_seed = kCheckSeed;
  check->add_option("--scale", scale, "trial count multiplier")->check(CLI::PositiveNumber);
  check->add_option("--seed", check_seed, "suite seed");

  auto* plot = app.add_subcommand("plot", "render a gap CSV as SVG");
  std::string plot_csv;
  std::string plot_svg;
  plot->add_option("csv", plot_csv, "gap CSV")->required();
  plot->add_option("svg", plot_svg, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*run) {
      const int sources = !config_positional.empty() + !config_flag.empty() + !preset.empty();
      if (sources != 1) {
        throw ConfigError("config", 0, "give exactly one of <config>, --config or --preset");
      }
      ExperimentConfig config;
      if (!preset.empty()) {
        config = PresetConfig(preset);
      } else {
        config = LoadConfig(config_positional.empty() ? config_flag : config_positional);
      }
      return RunExperiment(std::move(config), out_dir, threads, out, err);
    }
    if (*demo) return RunExperiment(PresetConfig("demo"), out_dir, threads, out, err);
    if (*check) {
      const bool ok = checks::PrintOutcomes(out, checks::RunCheckSuite(scale, check_seed));
      out << (ok ? "all checks passed" : "invariant check FAILED") << '\n';
      return ok ? kExitOk : kExitCheckFailure;
    }
    if (*plot) {
      std::vector<GapRecord> records;
      try {
        records = ReadGapCsv(plot_csv);
      } catch (const DomainError& e) {
        throw ConfigError("csv", 0, e.what());
      }
      RenderSvg(plot_svg, records);
      out << "wrote " << plot_svg << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitConfigError;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
  return kExitOk;
}

}  // namespace spectra_svi::experiment
