#include "extsym/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "extsym/error.hpp"

namespace extsym::cli {

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

// Flags that map onto parameter overrides, with the scenarios accepting them.
struct ParamFlag {
  const char* key;
  const char* help;
  std::set<std::string> scenarios;
};

const std::vector<ParamFlag>& param_flags() {
  static const std::vector<ParamFlag> flags = {
      {"beta", "frame velocity V/c", {"dalembert-galilei", "maxwell-galilei", "composition"}},
      {"n", "unit propagation direction x,y,z", {"dalembert-galilei", "maxwell-galilei", "composition"}},
      {"omega", "wave frequency", {"dalembert-galilei", "maxwell-galilei", "composition"}},
      {"c", "speed of light",
       {"dalembert-galilei", "maxwell-galilei", "composition", "schrodinger-lorentz"}},
      {"polarization", "polarization angle around n", {"maxwell-galilei"}},
      {"beta-prime", "second frame velocity, measured in the first", {"composition"}},
      {"V", "frame velocity", {"schrodinger-lorentz"}},
      {"v", "particle velocity x,y,z", {"schrodinger-lorentz"}},
      {"hbar", "reduced Planck constant", {"schrodinger-lorentz"}},
      {"m0", "rest mass", {"schrodinger-lorentz"}},
      {"operator", "dalembert | schrodinger", {"detsolve"}},
      {"p", "commutator order", {"detsolve"}},
      {"degree", "ansatz degree of xi and eta", {"detsolve"}},
      {"zeta-degree", "ansatz degree of zeta", {"detsolve"}},
      {"complex-scalars", "1 to allow complex eta and zeta", {"detsolve"}},
  };
  return flags;
}

const std::vector<std::pair<const char*, const char*>>& tol_flags() {
  static const std::vector<std::pair<const char*, const char*>> flags = {
      {"tol", "engaging-system tolerance"},
      {"identity-tol", "tolerance for exact operator identities"},
      {"composition-tol", "tolerance for composition laws"},
      {"fd-tol", "finite-difference oracle tolerance"},
      {"null-tol", "relative singular-value cutoff for detsolve"},
  };
  return flags;
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) config_error("--" + key + ": not a real number: '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) config_error("--" + key + ": not an integer: '" + text + "'");
  return v;
}

Vec3 parse_vec3(const std::string& key, const std::string& text) {
  Vec3 out{};
  std::stringstream ss(text);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == 3) config_error("--" + key + ": expected three comma-separated reals");
    out[static_cast<std::size_t>(i++)] = parse_real(key, part);
  }
  if (i != 3) config_error("--" + key + ": expected three comma-separated reals");
  return out;
}

class Overrides {
 public:
  explicit Overrides(const std::map<std::string, std::string>& m) : m_(m) {}
  void real(const char* key, double& target) const {
    if (auto it = m_.find(key); it != m_.end()) target = parse_real(key, it->second);
  }
  void integer(const char* key, int& target) const {
    if (auto it = m_.find(key); it != m_.end()) target = parse_int(key, it->second);
  }
  void vec(const char* key, Vec3& target) const {
    if (auto it = m_.find(key); it != m_.end()) target = parse_vec3(key, it->second);
  }
  void text(const char* key, std::string& target) const {
    if (auto it = m_.find(key); it != m_.end()) target = it->second;
  }

 private:
  const std::map<std::string, std::string>& m_;
};

void validate_keys(const RunConfig& config) {
  if (std::find(kScenarios.begin(), kScenarios.end(), config.scenario) == kScenarios.end())
    config_error("unknown scenario '" + config.scenario + "'");
  for (const auto& [key, value] : config.overrides) {
    const auto& flags = param_flags();
    auto it = std::find_if(flags.begin(), flags.end(), [&](const ParamFlag& f) { return key == f.key; });
    if (it == flags.end()) config_error("unknown parameter '" + key + "'");
    if (!it->scenarios.contains(config.scenario))
      config_error("parameter '" + key + "' does not apply to " + config.scenario);
  }
  for (const auto& [key, value] : config.tolerances) {
    const auto& flags = tol_flags();
    if (std::none_of(flags.begin(), flags.end(), [&](const auto& f) { return key == f.first; }))
      config_error("unknown tolerance '" + key + "'");
    if (!(value > 0.0)) config_error("tolerance '" + key + "' must be positive");
  }
  if (config.sweep < 0) config_error("--sweep must be non-negative");
  if (config.sweep > 0) {
    if (config.scenario == "igl-sweep" || config.scenario == "detsolve")
      config_error("--sweep does not apply to " + config.scenario);
    if (!config.overrides.empty()) config_error("parameter overrides cannot be combined with --sweep");
  }
}

ScenarioOptions scenario_options(const RunConfig& config) {
  ScenarioOptions opt;
  opt.fd_oracle = config.fd_oracle;
  for (const auto& [key, value] : config.tolerances) {
    if (key == "tol") {
      opt.tol.engaging = value;
      opt.tol.engaging_schrodinger = value;
    } else if (key == "identity-tol") {
      opt.tol.identity = value;
      opt.tol.nonrelativistic = value;
    } else if (key == "composition-tol") {
      opt.tol.composition = value;
    } else if (key == "fd-tol") {
      opt.tol.fd = value;
    }
  }
  return opt;
}

DalembertParams wave_params(const Overrides& o) {
  DalembertParams p;
  o.real("beta", p.beta);
  o.vec("n", p.n);
  o.real("omega", p.omega);
  o.real("c", p.c);
  return p;
}

std::filesystem::path output_path(const RunConfig& config) {
  const std::string ext = config.format == ReportFormat::Json ? ".json" : ".txt";
  std::filesystem::path path = config.output ? std::filesystem::path(*config.output)
                                             : std::filesystem::path(config.scenario + ext);
  if (config.output_dir && path.is_relative()) path = std::filesystem::path(*config.output_dir) / path;
  return path;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Symbolic verification of extended operator symmetries", "extsym"};
  app.require_subcommand(1);
  CLI::App* run_cmd = app.add_subcommand("run", "run a scenario and emit its report");

  RunConfig config;
  std::map<std::string, std::string> params;
  std::map<std::string, double> tols;
  std::string format = "text";
  std::string output, output_dir;
  bool no_fd = false;

  std::string scenario_help = "one of:";
  for (const auto& s : kScenarios) scenario_help += " " + s;
  run_cmd->add_option("scenario", config.scenario, scenario_help)->required();
  std::vector<std::pair<std::string, CLI::Option*>> param_opts;
  for (const auto& f : param_flags()) {
    auto* opt = run_cmd->add_option(std::string("--") + f.key, params[f.key], f.help);
    param_opts.emplace_back(f.key, opt);
  }
  std::vector<std::pair<std::string, CLI::Option*>> tol_opts;
  for (const auto& [key, help] : tol_flags()) {
    auto* opt = run_cmd->add_option(std::string("--") + key, tols[key], help);
    tol_opts.emplace_back(key, opt);
  }
  run_cmd->add_option("--seed", config.seed, "seed for random sweeps")->capture_default_str();
  run_cmd->add_option("--sweep", config.sweep, "number of random parameter draws (0 = single run)");
  run_cmd->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  run_cmd->add_option("--output", output, "report file (stdout if neither output flag is given)");
  run_cmd->add_option("--output-dir", output_dir, "directory for the report file");
  run_cmd->add_flag("--no-fd", no_fd, "skip the finite-difference oracle checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    config.help = run_cmd->parsed() ? run_cmd->help() : app.help();
    return config;
  } catch (const CLI::ParseError& e) {
    config_error(e.what());
  }

  for (const auto& [key, opt] : param_opts)
    if (opt->count() > 0) config.overrides[key] = params[key];
  for (const auto& [key, opt] : tol_opts)
    if (opt->count() > 0) config.tolerances[key] = tols[key];
  config.format = format == "json" ? ReportFormat::Json : ReportFormat::Text;
  if (run_cmd->count("--output") > 0) config.output = output;
  if (run_cmd->count("--output-dir") > 0) config.output_dir = output_dir;
  config.fd_oracle = !no_fd;
  validate_keys(config);
  return config;
}

ScenarioReport build_report(const RunConfig& config) {
  validate_keys(config);
  const ScenarioOptions opt = scenario_options(config);
  const Overrides o(config.overrides);
  const std::string& s = config.scenario;

  if (config.sweep > 0) {
    SweepKind kind = SweepKind::Dalembert;
    if (s == "schrodinger-lorentz") kind = SweepKind::Schrodinger;
    if (s == "maxwell-galilei") kind = SweepKind::Maxwell;
    if (s == "composition") kind = SweepKind::Composition;
    return run_sweep(kind, config.sweep, config.seed, opt);
  }
  if (s == "dalembert-galilei") return run_dalembert(wave_params(o), opt);
  if (s == "maxwell-galilei") {
    MaxwellParams p;
    p.wave = wave_params(o);
    o.real("polarization", p.polarization_angle);
    return run_maxwell(p, opt);
  }
  if (s == "composition") {
    DalembertParams p = wave_params(o);
    if (!config.overrides.contains("beta")) p.beta = 0.2;
    double beta_prime = 0.3;
    o.real("beta-prime", beta_prime);
    return check_composition(p, beta_prime, opt);
  }
  if (s == "schrodinger-lorentz") {
    SchrodingerParams p;
    o.real("V", p.V);
    o.vec("v", p.v);
    o.real("c", p.c);
    o.real("hbar", p.hbar);
    o.real("m0", p.m0);
    return run_schrodinger(p, opt);
  }
  if (s == "igl-sweep") return run_igl_sweep(opt);
  DetsolveParams p;
  o.text("operator", p.op);
  o.integer("p", p.spec.p);
  o.integer("degree", p.spec.degree);
  o.integer("zeta-degree", p.spec.zeta_degree);
  int complex_scalars = 0;
  o.integer("complex-scalars", complex_scalars);
  if (complex_scalars != 0 && complex_scalars != 1) config_error("--complex-scalars must be 0 or 1");
  p.spec.complex_scalars = complex_scalars == 1;
  if (auto it = config.tolerances.find("null-tol"); it != config.tolerances.end()) p.null_tol = it->second;
  return run_detsolve(p, opt);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  ScenarioReport report;
  try {
    report = build_report(config);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError)
      err << "error: " << e.what() << "\n";
    else
      err << "error: ConfigError: " << e.what() << "\n";
    return 2;
  }
  const std::string bytes = report_emit(report, config.format);
  if (config.output || config.output_dir) {
    const auto path = output_path(config);
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << bytes)) {
      err << "error: ConfigError: cannot write " << path.string() << "\n";
      return 2;
    }
    out << report.scenario << ": " << (report.pass() ? "PASS" : "FAIL") << " -> " << path.string()
        << "\n";
  } else {
    out << bytes;
  }
  return report.pass() ? 0 : 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!config.help.empty()) {
    out << config.help;
    return 0;
  }
  return run(config, out, err);
}

}  // namespace extsym::cli
