#include <algorithm>
#include <cmath>

#include "extsym/scenarios.hpp"

namespace extsym {

bool ScenarioReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void ScenarioReport::add_param(std::string key, double value) {
  params.emplace_back(std::move(key), value);
}

const CheckResult& ScenarioReport::add_check(std::string name, std::string ref, double residual,
                                             double tol) {
  checks.push_back({std::move(name), std::move(ref), residual, tol, residual < tol});
  return checks.back();
}

const CheckResult* ScenarioReport::find(std::string_view name) const {
  auto it = std::find_if(checks.begin(), checks.end(),
                         [&](const CheckResult& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

double ScenarioReport::param(std::string_view key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  return std::nan("");
}

}  // namespace extsym
