#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "uu/aggregates.hpp"
#include "uu/estimators.hpp"

namespace uu {

// Metadata block echoed into every report document.
struct ReportMeta {
    std::size_t n = 0;
    std::size_t c = 0;
    double coverage = 0.0;
    double gamma_sq = 0.0;
    std::optional<std::uint64_t> seed;
    nlohmann::json config_echo = nlohmann::json::object();
};

// sum / count / avg document
nlohmann::json make_report_document(const std::string& aggregate, const std::string& estimator,
                                    const EstimateReport& report, std::optional<double> bound,
                                    const ReportMeta& meta);

// min / max document
nlohmann::json make_extreme_document(const ExtremeReport& report, std::optional<double> bound,
                                     const ReportMeta& meta);

} // namespace uu
