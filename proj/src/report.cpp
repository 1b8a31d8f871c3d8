#include "uu/report.hpp"

namespace uu {

namespace {

nlohmann::json meta_json(const ReportMeta& meta) {
    nlohmann::json j{{"n", meta.n},
                     {"c", meta.c},
                     {"coverage", meta.coverage},
                     {"gamma_sq", meta.gamma_sq},
                     {"config", meta.config_echo}};
    if (meta.seed)
        j["seed"] = *meta.seed;
    else
        j["seed"] = nullptr;
    return j;
}

} // namespace

nlohmann::json make_report_document(const std::string& aggregate, const std::string& estimator,
                                    const EstimateReport& report, std::optional<double> bound,
                                    const ReportMeta& meta) {
    nlohmann::json body{{"phi_obs", report.phi_obs},
                        {"delta", report.delta},
                        {"phi_hat", report.phi_hat},
                        {"n_hat", report.n_hat},
                        {"coverage", report.coverage},
                        {"gamma_sq", report.gamma_sq},
                        {"trust", report.trust},
                        {"divergent", report.divergent}};
    if (report.upper_bound)
        body["upper_bound"] = *report.upper_bound;
    else
        body["upper_bound"] = nullptr;

    // the bound covers the adjusted total; the delta reading is the same
    // bound minus the observed aggregate
    return nlohmann::json{{"query", {{"aggregate", aggregate}}},
                          {"estimator", estimator},
                          {"report", body},
                          {"bound", bound ? nlohmann::json(*bound) : nlohmann::json(nullptr)},
                          {"bound_delta", bound ? nlohmann::json(*bound - report.phi_obs)
                                                : nlohmann::json(nullptr)},
                          {"metadata", meta_json(meta)}};
}

nlohmann::json make_extreme_document(const ExtremeReport& report, std::optional<double> bound,
                                     const ReportMeta& meta) {
    nlohmann::json body{{"which", report.which == Extreme::max ? "max" : "min"},
                        {"observed_extreme", report.observed_extreme},
                        {"reported", report.reported}};
    if (report.value)
        body["value"] = *report.value;
    else
        body["value"] = nullptr;

    return nlohmann::json{
        {"query", {{"aggregate", report.which == Extreme::max ? "max" : "min"}}},
        {"estimator", "bucket"},
        {"report", body},
        {"bound", bound ? nlohmann::json(*bound) : nlohmann::json(nullptr)},
        {"metadata", meta_json(meta)}};
}

} // namespace uu
