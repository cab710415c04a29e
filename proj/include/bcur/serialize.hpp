#pragma once

#include <json.hpp>

#include "bcur/bench.hpp"
#include "bcur/sketch.hpp"

namespace bcur {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json plan_to_json(const SamplingPlan& plan);
SamplingPlan plan_from_json(const Json& j);

Json row_plan_to_json(const RowPlan& plan);
RowPlan row_plan_from_json(const Json& j);

Json error_report_to_json(const ErrorReport& report);
Json access_report_to_json(const AccessReport& report);
Json harness_summary_to_json(const HarnessResult& result);

/// Full decomposition report: shapes, plans, metrics, boosting trail.
Json cur_result_to_json(const CurResult& result);

}  // namespace bcur
