#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "extsym/report.hpp"

namespace extsym::cli {

inline const std::vector<std::string> kScenarios = {
    "dalembert-galilei", "schrodinger-lorentz", "maxwell-galilei",
    "igl-sweep",         "composition",         "detsolve"};

struct RunConfig {
  std::string scenario;
  /// Parameter overrides by key (beta, n, omega, c, V, v, hbar, m0,
  /// polarization, beta-prime, operator, degree, p, zeta-degree).
  std::map<std::string, std::string> overrides;
  /// Tolerance overrides by key (tol, identity-tol, fd-tol, null-tol).
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;
  int sweep = 0;
  bool fd_oracle = true;
  std::optional<std::string> output;
  std::optional<std::string> output_dir;
  ReportFormat format = ReportFormat::Text;
  /// Set instead of a scenario when --help was requested.
  std::string help;
};

/// Parses `run <scenario> [flags]`. Throws Error(ConfigError) on bad usage.
RunConfig parse_args(const std::vector<std::string>& args);

/// Builds the report for a config. Throws Error (ConfigError for keys that
/// do not apply to the scenario, engine errors otherwise).
ScenarioReport build_report(const RunConfig& config);

/// Executes a config: writes the report (file or `out`), diagnostics to
/// `err`. Returns 0 on pass, 1 on a failing check, 2 on configuration error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, mapping usage errors to exit status 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace extsym::cli
