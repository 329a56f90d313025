#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "extsym/cli.hpp"
#include "extsym/error.hpp"

using namespace extsym;
using extsym::cli::main_entry;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("maxwell json report") {
  const auto r = run_cli({"run", "maxwell-galilei", "--beta", "0.3", "--n", "0,1,0", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["scenario"] == "maxwell-galilei");
  CHECK(j["pass"] == true);
  CHECK(j["engine_version"].is_string());
  CHECK(j["params"]["beta"] == 0.3);
  int engaging = 0;
  bool invariants = false;
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("paper_ref"));
    CHECK(c["residual"].is_number());
    CHECK(c["tol"].is_number());
    CHECK(c["pass"].is_boolean());
    const std::string name = c["name"];
    engaging += name.rfind("eq28_engaging_row", 0) == 0;
    invariants = invariants || name == "invariant_EH_on_shell";
  }
  CHECK(engaging == 8);
  CHECK(invariants);
}

TEST_CASE("linear group sweep via the CLI") {
  const auto r = run_cli({"run", "igl-sweep", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["checks"].size() == 40);
}

TEST_CASE("degenerate direction is a configuration error") {
  const auto r = run_cli({"run", "maxwell-galilei", "--n", "1,0,0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("ConfigError") != std::string::npos);
  CHECK(r.err.find("DegenerateDirection") != std::string::npos);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"run"}).code == 2);
  CHECK(run_cli({"run", "heat-equation"}).code == 2);
  CHECK(run_cli({"run", "dalembert-galilei", "--unknown", "1"}).code == 2);
  CHECK(run_cli({"run", "dalembert-galilei", "--V", "0.1"}).code == 2);
  CHECK(run_cli({"run", "dalembert-galilei", "--beta", "abc"}).code == 2);
  CHECK(run_cli({"run", "dalembert-galilei", "--n", "0,1"}).code == 2);
  CHECK(run_cli({"run", "dalembert-galilei", "--n", "0,2,0"}).code == 2);
  CHECK(run_cli({"run", "dalembert-galilei", "--format", "xml"}).code == 2);
  CHECK(run_cli({"run", "dalembert-galilei", "--tol", "-1"}).code == 2);
  CHECK(run_cli({"run", "igl-sweep", "--sweep", "3"}).code == 2);
  CHECK(run_cli({"run", "dalembert-galilei", "--sweep", "3", "--beta", "0.1"}).code == 2);
  CHECK(run_cli({"run", "detsolve", "--operator", "heat"}).code == 2);
  CHECK(run_cli({"run", "detsolve", "--complex-scalars", "2"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const auto r = run_cli({"run", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--beta") != std::string::npos);
}

TEST_CASE("a failing check exits with status 1 and still writes the report") {
  const auto dir = std::filesystem::temp_directory_path() / "extsym_cli_test";
  std::filesystem::remove_all(dir);
  const auto r = run_cli({"run", "schrodinger-lorentz", "--format", "json", "--output-dir", dir.string()});
  CHECK(r.code == 1);
  const auto path = dir / "schrodinger-lorentz.json";
  REQUIRE(std::filesystem::exists(path));
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["pass"] == false);
  std::filesystem::remove_all(dir);
}

TEST_CASE("tight tolerance turns a pass into a failure") {
  CHECK(run_cli({"run", "composition", "--composition-tol", "1e-30", "--no-fd"}).code == 1);
  CHECK(run_cli({"run", "composition", "--no-fd"}).code == 0);
}

TEST_CASE("identical configs give identical bytes") {
  const std::vector<std::string> args{"run", "dalembert-galilei", "--sweep", "8", "--seed", "3", "--format", "json"};
  const auto a = run_cli(args), b = run_cli(args);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["params"]["seed"] == 3.0);
  const auto c = run_cli({"run", "dalembert-galilei", "--sweep", "8", "--seed", "4", "--format", "json"});
  CHECK(a.out != c.out);
}

TEST_CASE("dalembert report names its double-commutator check") {
  const auto r = run_cli({"run", "dalembert-galilei", "--beta", "0.3", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "eq16_ad2_H1") {
      found = true;
      CHECK(c["residual"] == 0.0);
    }
  CHECK(found);
}

TEST_CASE("report emission") {
  ScenarioReport empty;
  empty.scenario = "none";
  const auto j = nlohmann::json::parse(report_json(empty));
  CHECK(j["pass"] == true);
  CHECK(j["checks"].is_array());
  CHECK(j["checks"].empty());
  CHECK(j["params"].is_object());

  ScenarioReport one;
  one.scenario = "x";
  one.add_param("beta", 0.1);
  one.add_check("c", "r", 2.0, 1.0);
  const auto k = nlohmann::json::parse(report_json(one));
  CHECK(k["pass"] == false);
  // Shortest round-trip formatting.
  CHECK(report_json(one).find("\"beta\": 0.1\n") != std::string::npos);
  const auto text = report_text(one);
  CHECK(text.find("FAIL") != std::string::npos);
  CHECK(text.find("beta = 0.1") != std::string::npos);
}

TEST_CASE("parse_args builds the config") {
  const auto c = cli::parse_args({"run", "detsolve", "--p", "1", "--degree", "0", "--null-tol", "1e-9",
                                  "--format", "json", "--output", "x.json"});
  CHECK(c.scenario == "detsolve");
  CHECK(c.overrides.at("p") == "1");
  CHECK(c.tolerances.at("null-tol") == 1e-9);
  CHECK(c.format == ReportFormat::Json);
  CHECK(c.output.value() == "x.json");
  CHECK(c.seed == 0);
  const auto rep = cli::build_report(c);
  CHECK(rep.param("null_dimension") == 5.0);
  CHECK_THROWS_AS(cli::parse_args({"run", "composition", "--omega"}), Error);
}
