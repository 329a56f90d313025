#pragma once

#include <string>
#include <string_view>

#include "extsym/scenarios.hpp"

namespace extsym {

inline constexpr std::string_view kEngineVersion = "1.0.0";

enum class ReportFormat { Text, Json };

/// {"scenario", "params", "checks": [{"name","paper_ref","residual","tol","pass"}],
///  "pass", "engine_version"}; doubles use shortest round-trip formatting.
std::string report_json(const ScenarioReport& report);
/// Aligned table, one row per check.
std::string report_text(const ScenarioReport& report);
std::string report_emit(const ScenarioReport& report, ReportFormat format);

}  // namespace extsym
