#include "bcur/serialize.hpp"

namespace bcur {

namespace {

SamplingMode mode_from_string(const std::string& s) {
    if (s == "with_replacement") {
        return SamplingMode::with_replacement;
    }
    if (s == "without_replacement") {
        return SamplingMode::without_replacement;
    }
    throw ParseError("unknown sampling mode '" + s + "'");
}

}  // namespace

Json plan_to_json(const SamplingPlan& plan) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "block_plan";
    j["mode"] = to_string(plan.mode);
    j["seed"] = plan.seed;
    j["g"] = plan.num_draws();
    Json draws = Json::array();
    for (const BlockDraw& d : plan.draws) {
        draws.push_back({{"block", d.block}, {"probability", d.probability}, {"scale", d.scale}});
    }
    j["draws"] = std::move(draws);
    return j;
}

SamplingPlan plan_from_json(const Json& j) {
    SamplingPlan plan;
    plan.mode = mode_from_string(j.at("mode").get<std::string>());
    plan.seed = j.at("seed").get<std::uint64_t>();
    for (const Json& d : j.at("draws")) {
        plan.draws.push_back({d.at("block").get<Index>(), d.at("probability").get<double>(),
                              d.at("scale").get<double>()});
    }
    return plan;
}

Json row_plan_to_json(const RowPlan& plan) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = "row_plan";
    j["mode"] = to_string(plan.mode);
    j["seed"] = plan.seed;
    j["source_rows"] = plan.source_rows;
    j["r"] = plan.num_draws();
    Json draws = Json::array();
    for (const RowDraw& d : plan.draws) {
        draws.push_back({{"row", d.row}, {"probability", d.probability}, {"scale", d.scale}});
    }
    j["draws"] = std::move(draws);
    return j;
}

RowPlan row_plan_from_json(const Json& j) {
    RowPlan plan;
    plan.mode = mode_from_string(j.at("mode").get<std::string>());
    plan.seed = j.at("seed").get<std::uint64_t>();
    plan.source_rows = j.at("source_rows").get<Index>();
    for (const Json& d : j.at("draws")) {
        plan.draws.push_back({d.at("row").get<Index>(), d.at("probability").get<double>(),
                              d.at("scale").get<double>()});
    }
    return plan;
}

Json error_report_to_json(const ErrorReport& report) {
    Json j;
    j["variant"] = to_string(report.variant);
    j["k"] = report.k;
    j["abs_err"] = report.abs_err;
    j["rel_to_A"] = report.rel_to_a;
    if (report.rel_to_best_k) {
        j["rel_to_best_k"] = *report.rel_to_best_k;
    } else {
        j["rel_to_best_k"] = nullptr;
    }
    return j;
}

Json access_report_to_json(const AccessReport& report) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["mode"] = to_string(report.mode);
    j["items_fetched"] = report.items_fetched;
    j["executors_contacted"] = report.executors_contacted;
    j["synthetic_cost"] = report.synthetic_cost;
    return j;
}

Json harness_summary_to_json(const HarnessResult& result) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["trials"] = result.trials.size();
    j["g"] = result.g;
    j["delta"] = result.delta;
    j["violation_rate"] = result.violation_rate;
    j["binomial_sigma"] = result.binomial_sigma;
    j["threshold"] = result.delta + 2.0 * result.binomial_sigma;
    j["passed"] = result.passed();
    return j;
}

Json cur_result_to_json(const CurResult& result) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["shapes"] = {{"C", {result.c.rows(), result.c.cols()}},
                   {"U", {result.u.rows(), result.u.cols()}},
                   {"R", {result.r.rows(), result.r.cols()}},
                   {"W", {result.w.rows(), result.w.cols()}}};
    j["row_plan"] = row_plan_to_json(result.row_plan);
    j["block_plan"] = plan_to_json(result.block_plan);
    j["metrics"] = Json::array({error_report_to_json(result.metrics_u), error_report_to_json(result.metrics_uk)});
    j["trial_errors"] = result.trial_errors;
    return j;
}

}  // namespace bcur
