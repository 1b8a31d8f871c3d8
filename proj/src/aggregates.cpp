#include "uu/aggregates.hpp"

#include <algorithm>

#include "uu/bucketing.hpp"
#include "uu/errors.hpp"
#include "uu/montecarlo.hpp"

namespace uu {

namespace {

// Per-bucket Chao92 count, falling back to the observed count whenever the
// bucket's estimate is undefined (all singletons or a single observation).
double bucket_count_estimate(const Bucket& b) {
    if (b.stats.n == 0) return 0.0;
    if (b.stats.all_singletons() || b.stats.n < 2) return static_cast<double>(b.stats.c);
    return chao92(b.stats);
}

} // namespace

EstimateReport estimate_count(const IntegratedSample& sample, CountEstimator kind,
                              double trust_threshold, const MCConfig* mc) {
    if (sample.empty()) throw EmptySample("cannot estimate the count of an empty sample");

    EstimateReport report;
    FrequencyStatistics fs = frequency_statistics(sample);
    report.phi_obs = static_cast<double>(fs.c);
    report.coverage = sample_coverage(fs);
    report.n_hat = static_cast<double>(fs.c);
    if (fs.all_singletons()) {
        report.divergent = true;
        report.phi_hat = report.phi_obs;
        return report;
    }
    if (fs.n >= 2) report.gamma_sq = cv_squared(fs);

    switch (kind) {
        case CountEstimator::chao92:
            report.n_hat = chao92(fs);
            break;
        case CountEstimator::monte_carlo: {
            MCConfig defaults;
            report.n_hat = mc_estimate_n(sample, mc ? *mc : defaults).n_hat;
            break;
        }
    }
    report.delta = report.n_hat - static_cast<double>(fs.c);
    report.phi_hat = report.phi_obs + report.delta;
    report.trust = report.coverage >= trust_threshold;
    return report;
}

EstimateReport estimate_avg(const IntegratedSample& sample, double trust_threshold) {
    if (sample.empty()) throw EmptySample("cannot estimate the mean of an empty sample");

    EstimateReport report;
    FrequencyStatistics fs = frequency_statistics(sample);
    double observed_sum = 0.0;
    for (double v : sample.values()) observed_sum += v;
    report.phi_obs = observed_sum / static_cast<double>(fs.c);
    report.coverage = sample_coverage(fs);
    if (fs.n >= 2 && !fs.all_singletons()) report.gamma_sq = cv_squared(fs);
    report.divergent = fs.all_singletons();

    // Weighted average of per-bucket means; weights are the per-bucket count
    // estimates, so buckets believed to hide unknowns pull the mean toward
    // their own value range.
    BucketEstimate buckets = dynamic_buckets(sample, Leaf::naive);
    double weighted = 0.0;
    double total_count = 0.0;
    for (const Bucket& b : buckets.buckets) {
        if (b.stats.c == 0) continue;
        const double n_hat_b = bucket_count_estimate(b);
        weighted += b.value_sum() / static_cast<double>(b.stats.c) * n_hat_b;
        total_count += n_hat_b;
    }
    report.n_hat = total_count;
    report.phi_hat = total_count > 0.0 ? weighted / total_count : report.phi_obs;
    report.delta = report.phi_hat - report.phi_obs;
    report.trust = report.coverage >= trust_threshold;
    return report;
}

ExtremeReport estimate_extreme(const IntegratedSample& sample, Extreme which) {
    if (sample.empty()) throw EmptySample("cannot gate an extreme of an empty sample");

    ExtremeReport report;
    report.which = which;

    BucketEstimate buckets = dynamic_buckets(sample, Leaf::naive); // value-ascending
    const Bucket& edge =
        which == Extreme::max ? buckets.buckets.back() : buckets.buckets.front();
    report.observed_extreme = which == Extreme::max
                                  ? *std::max_element(sample.values().begin(), sample.values().end())
                                  : *std::min_element(sample.values().begin(), sample.values().end());

    // An all-singleton edge bucket has a divergent count estimate; that is
    // never "zero unknowns", so the gate stays closed.
    if (!edge.stats.all_singletons()) {
        const double unknown = bucket_count_estimate(edge) - static_cast<double>(edge.stats.c);
        report.reported = unknown < 0.5; // rounded unknown count of zero
    }
    if (report.reported) report.value = report.observed_extreme;
    return report;
}

} // namespace uu
