#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "spectra_svi/error.hpp"
#include "spectra_svi/experiment/cli.hpp"
#include "spectra_svi/experiment/config.hpp"
#include "spectra_svi/experiment/csv.hpp"
#include "spectra_svi/experiment/grid.hpp"
#include "spectra_svi/experiment/svg_plot.hpp"

using namespace spectra_svi;
using namespace spectra_svi::experiment;
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kTinyConfig = R"(# two methods, two sigmas
[experiment]
name = tiny
antennas = 2x2
sigmas = 0.5, 2
iterations = 30
sample_paths = 2
gap_every = 10
base_seed = 42

[method am-smd]
[method m-smd]
schedule = harmonic
[method mel]
lambdas = 0.5
)";

std::string GoldenPath() { return std::string(SPECTRA_SVI_TEST_DATA_DIR) + "/golden_gaps.csv"; }

std::string Slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("spectra_svi_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "spectra-svi");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = CliMain(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

int ConfigErrorLine(std::string_view text, std::string* key = nullptr) {
  try {
    ParseConfigString(text);
  } catch (const ConfigError& e) {
    if (key) *key = e.key();
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("config parsing") {
  const ExperimentConfig c = ParseConfigString(kTinyConfig);
  CHECK(c.name == "tiny");
  CHECK(c.topology == "canonical7");
  REQUIRE(c.antennas.size() == 1);
  CHECK(c.antennas[0].tx == 2);
  CHECK(c.sigmas == std::vector<double>{0.5, 2.0});
  CHECK(c.iterations == 30);
  CHECK(c.sample_paths == 2);
  CHECK(c.base_seed == 42);
  CHECK(c.resample_channels);
  REQUIRE(c.methods.size() == 3);
  CHECK(c.methods[0].schedule.kind == StepSchedule::Kind::kHarmonicSqrt);
  CHECK(c.methods[1].schedule.kind == StepSchedule::Kind::kHarmonic);
  CHECK(c.methods[2].schedule.kind == StepSchedule::Kind::kHarmonic);
  CHECK(c.methods[2].lambdas == std::vector<double>{0.5});
}

TEST_CASE("config errors name the key and line") {
  std::string key;
  CHECK(ConfigErrorLine("[experiment]\nantennas = 2x2\nsigmas = 1\niterations = 5\nbogus = 1\n",
                        &key) == 5);
  CHECK(key == "bogus");
  CHECK(ConfigErrorLine("[experiment]\nantennas = 2y2\n", &key) == 2);
  CHECK(key == "antennas");
  CHECK(ConfigErrorLine("[experiment]\nantennas = 2x2\nsigmas = 1\niterations = 0\n", &key) == 4);
  CHECK(key == "iterations");
  CHECK(ConfigErrorLine("[experiment]\nantennas = 2x2\niterations = 5\n[method mel]\n", &key) ==
        0);
  CHECK(key == "sigmas");
  CHECK(ConfigErrorLine("[experiment]\nantennas = 2x2\nsigmas = 1\niterations = 5\n", &key) == 0);
  CHECK(key == "method");
  CHECK(ConfigErrorLine("[method mel]\nlambdas = 0.1, -2\n", &key) == 2);
  CHECK(ConfigErrorLine("[method mel]\nschedule = sometimes\n[experiment]\nantennas = 2x2\n"
                        "sigmas = 1\niterations = 3\n",
                        &key) == 2);
  CHECK(key == "schedule");
  CHECK(ConfigErrorLine("[experiment]\nsigmas = 1\nsigmas = 2\n", &key) == 3);
  CHECK(ConfigErrorLine("[method am-smd]\nlambdas = 0.1\n", &key) == 2);
  CHECK(ConfigErrorLine("[method foo]\n", &key) == 1);
  CHECK(ConfigErrorLine("[experiment]\nsample_paths = -1\n", &key) == 2);
}

TEST_CASE("schedules") {
  CHECK(ParseSchedule("harmonic-sqrt", 10).kind == StepSchedule::Kind::kHarmonicSqrt);
  CHECK(ParseSchedule("rate-optimal", 10).horizon == 10);
  const StepSchedule c = ParseSchedule("constant:0.25", 10);
  CHECK(c.kind == StepSchedule::Kind::kConstant);
  CHECK(c.eta == 0.25);
  CHECK_THROWS_AS(ParseSchedule("constant:-1", 10), DomainError);
  CHECK_THROWS_AS(ParseSchedule("sometimes", 10), DomainError);
}

TEST_CASE("presets") {
  const ExperimentConfig demo = PresetConfig("demo");
  CHECK(demo.iterations == 2000);
  CHECK(demo.sample_paths == 3);
  CHECK(demo.sigmas == std::vector<double>{1.0});
  CHECK(ExpandGrid(demo).size() == 5);

  const ExperimentConfig grid = PresetConfig("paper-grid");
  CHECK(ExpandGrid(grid).size() == 45);
  CHECK(grid.iterations == 4000);
  CHECK(grid.sample_paths == 10);

  const ExperimentConfig stability = PresetConfig("stability");
  CHECK(stability.record_throughput);
  CHECK(stability.sigmas == std::vector<double>{10.0});
  CHECK(stability.antennas[0].tx == 4);
  CHECK(stability.antennas[0].rx == 4);
  CHECK_THROWS_AS(PresetConfig("nope"), ConfigError);
}

TEST_CASE("echo reparses to the same config and lists interpretation flags") {
  const ExperimentConfig c = ParseConfigString(kTinyConfig);
  const std::string echo = EchoConfig(c);
  CHECK(echo.find("[interpretation]") != std::string::npos);
  CHECK(echo.find("mel_gap_mapping") != std::string::npos);
  CHECK(echo.find("channels_resampled_per_path = true") != std::string::npos);
  const std::string config_part = echo.substr(0, echo.find("[interpretation]"));
  const ExperimentConfig back = ParseConfigString(config_part);
  CHECK(ExpandGrid(back).size() == ExpandGrid(c).size());
  CHECK(back.base_seed == c.base_seed);
}

TEST_CASE("path seeds are pairwise distinct") {
  const ExperimentConfig grid = PresetConfig("paper-grid");
  std::set<std::uint64_t> seeds;
  std::size_t count = 0;
  for (const GridCell& cell : ExpandGrid(grid)) {
    for (int p = 0; p < grid.sample_paths; ++p) {
      seeds.insert(PathSeed(grid.base_seed, cell, p));
      ++count;
    }
  }
  CHECK(count == 450);
  CHECK(seeds.size() == count);
  // Channels depend on antennas and path only.
  CHECK(ChannelSeed(1, {2, 2}, 0, true) != ChannelSeed(1, {2, 2}, 1, true));
  CHECK(ChannelSeed(1, {2, 2}, 0, false) == ChannelSeed(1, {2, 2}, 5, false));
  CHECK(ChannelSeed(1, {2, 4}, 0, true) != ChannelSeed(1, {4, 2}, 0, true));
}

TEST_CASE("grid runs are deterministic and thread-count independent") {
  const ExperimentConfig c = ParseConfigString(kTinyConfig);
  const GridResult a = RunGrid(c, 1);
  const GridResult b = RunGrid(c, 3);
  CHECK(a.failures.empty());
  // 6 cells x 2 paths x gaps at t = 0, 10, 20, 30.
  CHECK(a.gaps.size() == 6 * 2 * 4);
  CHECK(a.gaps == b.gaps);
  for (const GapRecord& r : a.gaps) {
    CHECK(r.gap >= -1e-8);
    CHECK(r.elapsed_ms == 0.0);
  }
  // Every method sees the same channels: the gap at iteration 0 only depends
  // on the channel draw, since all methods start from the same point.
  std::map<std::pair<double, int>, std::set<double>> start;
  for (const GapRecord& r : a.gaps) {
    if (r.iter == 0) start[{r.sigma, r.path}].insert(r.gap);
  }
  for (const auto& [key, gaps] : start) CHECK(gaps.size() == 1);
}

TEST_CASE("mean over paths") {
  const ExperimentConfig c = ParseConfigString(kTinyConfig);
  const GridResult r = RunGrid(c, 1);
  const std::vector<MeanGapRecord> means = MeanOverPaths(r.gaps);
  CHECK(means.size() == r.gaps.size() / 2);
  for (const MeanGapRecord& m : means) {
    double sum = 0.0;
    int n = 0;
    for (const GapRecord& g : r.gaps) {
      if (g.method == m.method && g.sigma == m.sigma && g.lambda == m.lambda && g.iter == m.iter &&
          g.m == m.m && g.n == m.n) {
        sum += g.gap;
        ++n;
      }
    }
    CHECK(n == 2);
    CHECK(m.paths == 2);
    CHECK(m.mean_gap == doctest::Approx(sum / n).epsilon(1e-15));
  }
}

TEST_CASE("csv schema") {
  std::ostringstream empty;
  WriteGapCsv(empty, {});
  CHECK(empty.str() == std::string(kGapCsvHeader) + "\n");

  const std::string golden = Slurp(GoldenPath());
  std::ostringstream rewritten;
  WriteGapCsv(rewritten, ReadGapCsv(GoldenPath()));
  CHECK(rewritten.str() == golden);

  // Writer sorts and prints 17 significant digits.
  std::vector<GapRecord> rs = {{"M-SMD", 2, 2, 1.0, 0.0, 0, 0, 0.1, 0.0},
                               {"AM-SMD", 2, 2, 1.0, 0.0, 1, 0, 1.0 / 3.0, 0.0},
                               {"AM-SMD", 2, 2, 1.0, 0.0, 0, 10, 2.0, 0.0}};
  std::ostringstream s;
  WriteGapCsv(s, rs);
  CHECK(s.str() == std::string(kGapCsvHeader) +
                       "\nAM-SMD,2,2,1,0,0,10,2,0\n"
                       "AM-SMD,2,2,1,0,1,0,0.33333333333333331,0\n"
                       "M-SMD,2,2,1,0,0,0,0.10000000000000001,0\n");

  std::istringstream bad(std::string(kGapCsvHeader) + "\nAM-SMD,2,2,1,0,0,x,1,0\n");
  CHECK_THROWS_AS(ReadGapCsv(bad), DomainError);
  std::istringstream wrong_header("method,gap\n");
  CHECK_THROWS_AS(ReadGapCsv(wrong_header), DomainError);
}

TEST_CASE("svg rendering") {
  const std::vector<GapRecord> golden = ReadGapCsv(GoldenPath());
  std::ostringstream s;
  RenderSvg(s, golden);
  const std::string svg = s.str();
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = svg.find(needle); pos != std::string::npos;
         pos = svg.find(needle, pos + 1)) {
      ++n;
    }
    return n;
  };
  // Three distinct (method, lambda) pairs: AM-SMD, M-SMD, MEL 0.1.
  CHECK(count("class=\"legend-entry\"") == 3);
  CHECK(count("class=\"series\"") == 3);
  CHECK(count("class=\"panel\"") == 2);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(svg.find("inf") == std::string::npos);

  std::ostringstream single;
  RenderSvg(single, {{"AM-SMD", 2, 2, 1.0, 0.0, 0, 0, 0.0, 0.0}});
  CHECK(single.str().find("<circle class=\"series\"") != std::string::npos);
  CHECK(single.str().find("<polyline") == std::string::npos);
}

TEST_CASE("cli exit codes and outputs") {
  SUBCASE("check") {
    const CliRun r = Cli({"check", "--scale", "0.1"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
  }
  SUBCASE("malformed config key") {
    const fs::path dir = ScratchDir("badkey");
    std::ofstream(dir / "bad.conf") << "[experiment]\nantennas = 2x2\nsigmas = 1\niterations = 5\n"
                                       "colour = red\n";
    const CliRun r = Cli({"run", (dir / "bad.conf").string(), "--out", (dir / "out").string()});
    CHECK(r.code == kExitConfigError);
    CHECK(r.err.find("colour") != std::string::npos);
    CHECK(r.err.find("line 5") != std::string::npos);
  }
  SUBCASE("missing config file") {
    CHECK(Cli({"run", "/nonexistent/x.conf"}).code == kExitConfigError);
    CHECK(Cli({"run"}).code == kExitConfigError);
    CHECK(Cli({"frobnicate"}).code == kExitConfigError);
  }
  SUBCASE("run twice gives identical bytes") {
    const fs::path dir = ScratchDir("determinism");
    std::ofstream(dir / "tiny.conf") << kTinyConfig;
    for (const char* sub : {"a", "b"}) {
      const CliRun r = Cli({"run", "--config", (dir / "tiny.conf").string(), "--out",
                            (dir / sub).string(), "--threads", "2"});
      REQUIRE(r.code == kExitOk);
    }
    const std::string a = Slurp(dir / "a" / "tiny.csv");
    CHECK(!a.empty());
    CHECK(a == Slurp(dir / "b" / "tiny.csv"));
    CHECK(fs::exists(dir / "a" / "tiny.svg"));
    CHECK(fs::exists(dir / "a" / "tiny.summary.csv"));
    CHECK(Slurp(dir / "a" / "config.echo.txt").find("[interpretation]") != std::string::npos);
  }
  SUBCASE("seed override from the environment") {
    const fs::path dir = ScratchDir("seed");
    std::ofstream(dir / "tiny.conf") << kTinyConfig;
    ::setenv("SPECTRA_SVI_SEED", "7", 1);
    const CliRun r = Cli({"run", (dir / "tiny.conf").string(), "--out", (dir / "o").string()});
    ::unsetenv("SPECTRA_SVI_SEED");
    CHECK(r.code == kExitOk);
    CHECK(Slurp(dir / "o" / "config.echo.txt").find("base_seed = 7\n") != std::string::npos);

    ::setenv("SPECTRA_SVI_SEED", "seven", 1);
    const CliRun bad = Cli({"run", (dir / "tiny.conf").string(), "--out", (dir / "p").string()});
    ::unsetenv("SPECTRA_SVI_SEED");
    CHECK(bad.code == kExitConfigError);
  }
  SUBCASE("plot") {
    const fs::path dir = ScratchDir("plot");
    const CliRun r = Cli({"plot", GoldenPath(), (dir / "g.svg").string()});
    CHECK(r.code == kExitOk);
    CHECK(Slurp(dir / "g.svg").find("</svg>") != std::string::npos);
    CHECK(Cli({"plot", (dir / "missing.csv").string(), (dir / "x.svg").string()}).code ==
          kExitConfigError);
  }
  SUBCASE("stability preset writes throughput") {
    ExperimentConfig c = PresetConfig("stability");
    c.iterations = 5;
    c.sample_paths = 1;
    c.gap_every = 5;
    const GridResult r = RunGrid(c, 1);
    std::ostringstream csv;
    WriteThroughputCsv(csv, r.throughput);
    const std::string text = csv.str();
    CHECK(text.rfind(std::string(kThroughputCsvHeader) + "\n", 0) == 0);
    // 2 methods x 7 players x (T + 1) reported points.
    CHECK(r.throughput.size() == 2 * 7 * 6);
  }
}

}  // TEST_SUITE
