#include "spectra_svi/experiment/config.hpp"

#include <cerrno>
#include <cmath>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "spectra_svi/error.hpp"
#include "spectra_svi/matrix_io.hpp"

namespace spectra_svi::experiment {

namespace {

constexpr std::string_view kDemoPreset = R"(# canonical 7-cell network, m = n = 2, sigma = 1
[experiment]
name = demo
topology = canonical7
antennas = 2x2
sigmas = 1
iterations = 2000
sample_paths = 3
gap_every = 10
base_seed = 20190601

[method am-smd]
schedule = harmonic-sqrt

[method m-smd]
schedule = harmonic-sqrt

[method mel]
schedule = harmonic
lambdas = 0.1, 0.5, 1
)";

constexpr std::string_view kPaperGridPreset = R"(# (m, n) x sigma x method grid, 4000 iterations, 10 sample paths
[experiment]
name = paper-grid
topology = canonical7
antennas = 2x4, 4x2, 4x4
sigmas = 0.5, 1, 5
iterations = 4000
sample_paths = 10
gap_every = 10
base_seed = 20190601

[method am-smd]
schedule = harmonic-sqrt

[method m-smd]
schedule = harmonic-sqrt

[method mel]
schedule = harmonic
lambdas = 0.1, 0.5, 1
)";

constexpr std::string_view kStabilityPreset = R"(# per-player throughput under heavy noise, m = n = 4, sigma = 10
[experiment]
name = stability
topology = canonical7
antennas = 4x4
sigmas = 10
iterations = 4000
sample_paths = 10
gap_every = 50
base_seed = 20190601
record_throughput = true

[method am-smd]
schedule = harmonic-sqrt

[method m-smd]
schedule = harmonic-sqrt
)";

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    out.push_back(Trim(s.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Context {
  std::string key;
  int line = 0;

  [[noreturn]] void Fail(const std::string& what) const { throw ConfigError(key, line, what); }
};

double ParseDouble(const std::string& s, const Context& ctx) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    ctx.Fail("expected a number, got '" + s + "'");
  }
  return v;
}

template <typename Int>
Int ParseInt(const std::string& s, const Context& ctx) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    ctx.Fail("expected an integer, got '" + s + "'");
  }
  return v;
}

bool ParseBool(const std::string& s, const Context& ctx) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  ctx.Fail("expected true or false, got '" + s + "'");
}

std::vector<double> ParseDoubleList(const std::string& s, const Context& ctx) {
  std::vector<double> out;
  for (const std::string& item : SplitList(s)) out.push_back(ParseDouble(item, ctx));
  return out;
}

mimo::Antennas ParseAntennaPair(const std::string& s, const Context& ctx) {
  const auto x = s.find('x');
  if (x == std::string::npos) ctx.Fail("antenna pair must look like <m>x<n>, got '" + s + "'");
  mimo::Antennas a;
  a.tx = ParseInt<long>(Trim(std::string_view(s).substr(0, x)), ctx);
  a.rx = ParseInt<long>(Trim(std::string_view(s).substr(x + 1)), ctx);
  if (a.tx < 1 || a.rx < 1) ctx.Fail("antenna counts must be >= 1");
  return a;
}

const char* ConfigName(Method m) {
  switch (m) {
    case Method::kAmSmd:
      return "am-smd";
    case Method::kMSmd:
      return "m-smd";
    case Method::kMel:
      return "mel";
  }
  return "?";
}

std::optional<Method> MethodFromName(const std::string& s) {
  if (s == "am-smd") return Method::kAmSmd;
  if (s == "m-smd") return Method::kMSmd;
  if (s == "mel") return Method::kMel;
  return std::nullopt;
}

struct PendingMethod {
  Method method;
  std::string schedule;
  Context schedule_ctx;
  std::vector<double> lambdas;
  bool lambdas_set = false;
};

}  // namespace

StepSchedule ParseSchedule(std::string_view text, long iterations) {
  const std::string s = Trim(text);
  if (s == "harmonic-sqrt") return StepSchedule::HarmonicSqrt();
  if (s == "harmonic") return StepSchedule::Harmonic();
  if (s == "rate-optimal") return StepSchedule::ConstantRateOptimal(iterations);
  if (s.rfind("constant:", 0) == 0) {
    const std::string v = Trim(std::string_view(s).substr(9));
    char* end = nullptr;
    const double eta = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) throw DomainError("bad constant stepsize");
    return StepSchedule::Constant(eta);
  }
  throw DomainError("unknown schedule '" + s + "'");
}

void ExperimentConfig::Validate() const {
  if (antennas.empty()) throw ConfigError("antennas", 0, "at least one antenna pair is required");
  if (sigmas.empty()) throw ConfigError("sigmas", 0, "at least one sigma is required");
  for (double s : sigmas) {
    if (!(s >= 0.0)) throw ConfigError("sigmas", 0, "sigma must be >= 0");
  }
  if (methods.empty()) throw ConfigError("method", 0, "at least one [method ...] section is required");
  for (const MethodSpec& m : methods) {
    if (m.method == Method::kMel && m.lambdas.empty()) {
      throw ConfigError("lambdas", 0, "MEL needs at least one lambda");
    }
    for (double l : m.lambdas) {
      if (!(l >= 0.0)) throw ConfigError("lambdas", 0, "lambda must be >= 0");
    }
  }
  if (iterations < 1) throw ConfigError("iterations", 0, "iterations must be >= 1");
  if (sample_paths < 1) throw ConfigError("sample_paths", 0, "sample_paths must be >= 1");
  if (gap_every < 1) throw ConfigError("gap_every", 0, "gap_every must be >= 1");
}

ExperimentConfig ParseConfig(std::istream& in) {
  ExperimentConfig cfg;
  std::vector<PendingMethod> pending;
  std::map<std::string, bool> seen;
  enum class Section { kNone, kExperiment, kMethod } section = Section::kNone;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = Trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      Context ctx{line, line_no};
      if (line.back() != ']') ctx.Fail("unterminated section header");
      const std::string inner = Trim(std::string_view(line).substr(1, line.size() - 2));
      if (inner == "experiment") {
        section = Section::kExperiment;
      } else if (inner.rfind("method", 0) == 0) {
        const std::string name = Trim(std::string_view(inner).substr(6));
        const auto method = MethodFromName(name);
        if (!method) ctx.Fail("unknown method '" + name + "' (expected am-smd, m-smd or mel)");
        for (const PendingMethod& p : pending) {
          if (p.method == *method) ctx.Fail("method '" + name + "' listed twice");
        }
        pending.push_back({*method, *method == Method::kMel ? "harmonic" : "harmonic-sqrt",
                           Context{"schedule", line_no}, {}, false});
        section = Section::kMethod;
      } else {
        ctx.Fail("unknown section '" + inner + "'");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      Context{line, line_no}.Fail("expected 'key = value'");
    }
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    const std::string value = Trim(std::string_view(line).substr(eq + 1));
    const Context ctx{key, line_no};
    if (value.empty()) ctx.Fail("missing value");

    if (section == Section::kNone) ctx.Fail("key outside of any section");
    if (section == Section::kMethod) {
      PendingMethod& m = pending.back();
      if (key == "schedule") {
        m.schedule = value;
        m.schedule_ctx = ctx;
      } else if (key == "lambdas" && m.method == Method::kMel) {
        m.lambdas = ParseDoubleList(value, ctx);
        m.lambdas_set = true;
        for (double v : m.lambdas) {
          if (!(v >= 0.0)) ctx.Fail("lambda must be >= 0");
        }
      } else {
        ctx.Fail("unknown method key");
      }
      continue;
    }

    if (seen[key]) ctx.Fail("duplicate key");
    seen[key] = true;
    if (key == "name") {
      cfg.name = value;
    } else if (key == "topology") {
      cfg.topology = value;
    } else if (key == "antennas") {
      for (const std::string& item : SplitList(value)) {
        cfg.antennas.push_back(ParseAntennaPair(item, ctx));
      }
    } else if (key == "sigmas") {
      cfg.sigmas = ParseDoubleList(value, ctx);
      for (double v : cfg.sigmas) {
        if (!(v >= 0.0)) ctx.Fail("sigma must be >= 0");
      }
    } else if (key == "iterations") {
      cfg.iterations = ParseInt<long>(value, ctx);
      if (cfg.iterations < 1) ctx.Fail("must be >= 1");
    } else if (key == "sample_paths") {
      cfg.sample_paths = ParseInt<int>(value, ctx);
      if (cfg.sample_paths < 1) ctx.Fail("must be >= 1");
    } else if (key == "gap_every") {
      cfg.gap_every = ParseInt<long>(value, ctx);
      if (cfg.gap_every < 1) ctx.Fail("must be >= 1");
    } else if (key == "base_seed") {
      cfg.base_seed = ParseInt<std::uint64_t>(value, ctx);
    } else if (key == "resample_channels") {
      cfg.resample_channels = ParseBool(value, ctx);
    } else if (key == "record_throughput") {
      cfg.record_throughput = ParseBool(value, ctx);
    } else if (key == "record_elapsed") {
      cfg.record_elapsed = ParseBool(value, ctx);
    } else if (key == "output") {
      cfg.output_dir = value;
    } else {
      ctx.Fail("unknown key");
    }
  }

  for (const char* required : {"antennas", "sigmas", "iterations"}) {
    if (!seen[required]) throw ConfigError(required, 0, "required key is missing");
  }
  for (PendingMethod& p : pending) {
    MethodSpec spec;
    spec.method = p.method;
    try {
      spec.schedule = ParseSchedule(p.schedule, std::max(cfg.iterations, 1L));
    } catch (const DomainError& e) {
      p.schedule_ctx.Fail(e.what());
    }
    spec.lambdas = p.method == Method::kMel && !p.lambdas_set ? std::vector<double>{0.1, 0.5, 1.0}
                                                              : p.lambdas;
    cfg.methods.push_back(std::move(spec));
  }
  cfg.Validate();
  return cfg;
}

ExperimentConfig ParseConfigString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseConfig(in);
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
  return ParseConfig(in);
}

std::string_view PresetText(std::string_view name) {
  if (name == "demo") return kDemoPreset;
  if (name == "paper-grid") return kPaperGridPreset;
  if (name == "stability") return kStabilityPreset;
  throw ConfigError("preset", 0, "unknown preset '" + std::string(name) + "'");
}

ExperimentConfig PresetConfig(std::string_view name) {
  return ParseConfigString(PresetText(name));
}

std::string EchoConfig(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "[experiment]\n"
    << "name = " << c.name << '\n'
    << "topology = " << c.topology << '\n'
    << "antennas = ";
  for (std::size_t i = 0; i < c.antennas.size(); ++i) {
    o << (i ? ", " : "") << c.antennas[i].tx << 'x' << c.antennas[i].rx;
  }
  o << "\nsigmas = ";
  for (std::size_t i = 0; i < c.sigmas.size(); ++i) o << (i ? ", " : "") << FormatDouble(c.sigmas[i]);
  o << "\niterations = " << c.iterations << '\n'
    << "sample_paths = " << c.sample_paths << '\n'
    << "gap_every = " << c.gap_every << '\n'
    << "base_seed = " << c.base_seed << '\n'
    << "resample_channels = " << (c.resample_channels ? "true" : "false") << '\n'
    << "record_throughput = " << (c.record_throughput ? "true" : "false") << '\n'
    << "record_elapsed = " << (c.record_elapsed ? "true" : "false") << '\n';
  for (const MethodSpec& m : c.methods) {
    o << "\n[method " << ConfigName(m.method) << "]\n"
      << "schedule = " << m.schedule.Describe() << '\n';
    if (m.method == Method::kMel) {
      o << "lambdas = ";
      for (std::size_t i = 0; i < m.lambdas.size(); ++i) {
        o << (i ? ", " : "") << FormatDouble(m.lambdas[i]);
      }
      o << '\n';
    }
  }
  o << "\n[interpretation]\n"
    << "log_base = natural\n"
    << "power_bound = max_power used directly as the trace bound (1 dBm read as 1)\n"
    << "strategy_set = tr X_i <= p via slack-coordinate Gibbs map\n"
    << "initialization = Y_0 = 0, X_0 = mirror(Y_0) (uniform up to the slack share)\n"
    << "harmonic_indexing = eta_t = 1/sqrt(t+1) or 1/(t+1), t zero-based\n"
    << "gap = closed-form strong gap sup_Z tr(F(X)(X - Z)) via lambda_min per block\n"
    << "gap_point = AM-SMD at the averaged iterate, M-SMD and MEL at the last iterate\n"
    << "mel_gap_mapping = original F (not F + lambda X)\n"
    << "noise = Hermitianized i.i.d. complex Gaussian, entry variance sigma^2\n"
    << "oracle_bound_C = 1.5 x max ||Phi||_2 over 100 probes (full oracle incl. noise)\n"
    << "rate_optimal_dimension = total dimension sum_i m_i\n"
    << "channel_seed = per (m, n, path); shared by every method and sigma of that path\n"
    << "channels_resampled_per_path = " << (c.resample_channels ? "true" : "false") << '\n'
    << "elapsed_ms = " << (c.record_elapsed ? "wall clock" : "0 (record_elapsed = false)") << '\n';
  return o.str();
}

}  // namespace spectra_svi::experiment
