#include <algorithm>
#include <array>
#include <charconv>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "extsym/report.hpp"

namespace extsym {

namespace {

std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return ec == std::errc{} ? std::string(buf.data(), end) : std::string("?");
}

}  // namespace

std::string report_json(const ScenarioReport& report) {
  nlohmann::ordered_json j;
  j["scenario"] = report.scenario;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.params) j["params"][k] = v;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["paper_ref"] = c.paper_ref;
    cj["residual"] = c.residual;
    cj["tol"] = c.tol;
    cj["pass"] = c.pass;
    j["checks"].push_back(std::move(cj));
  }
  j["pass"] = report.pass();
  j["engine_version"] = std::string(kEngineVersion);
  return j.dump(2) + "\n";
}

std::string report_text(const ScenarioReport& report) {
  std::size_t name_w = 5;
  std::size_t ref_w = 3;
  for (const auto& c : report.checks) {
    name_w = std::max(name_w, c.name.size());
    ref_w = std::max(ref_w, c.paper_ref.size());
  }
  std::ostringstream os;
  os << "scenario: " << report.scenario << "\n";
  for (const auto& [k, v] : report.params) os << "  " << k << " = " << shortest(v) << "\n";
  os << std::left << std::setw(static_cast<int>(name_w)) << "check" << "  "
     << std::setw(static_cast<int>(ref_w)) << "ref" << "  " << std::setw(12) << "residual"
     << "  " << std::setw(10) << "tol" << "  result\n";
  for (const auto& c : report.checks) {
    os << std::left << std::setw(static_cast<int>(name_w)) << c.name << "  "
       << std::setw(static_cast<int>(ref_w)) << c.paper_ref << "  " << std::scientific
       << std::setprecision(3) << std::setw(12) << c.residual << "  " << std::setw(10) << c.tol
       << "  " << (c.pass ? "PASS" : "FAIL") << "\n";
    os.unsetf(std::ios::floatfield);
  }
  os << "overall: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string report_emit(const ScenarioReport& report, ReportFormat format) {
  return format == ReportFormat::Json ? report_json(report) : report_text(report);
}

}  // namespace extsym
