#include "uu/estimators.hpp"

#include <cmath>

#include "uu/bucketing.hpp"
#include "uu/errors.hpp"
#include "uu/montecarlo.hpp"

namespace uu {

std::string EstimatorKind::name() const {
    switch (variant) {
        case Variant::observed: return "observed";
        case Variant::naive: return "naive";
        case Variant::frequency: return "freq";
        case Variant::frequency_simple: return "freq_simple";
        case Variant::bucket: return leaf == Leaf::naive ? "bucket" : "bucket_freq";
        case Variant::monte_carlo: return "mc";
    }
    return "naive";
}

std::optional<EstimatorKind> EstimatorKind::parse(const std::string& name) {
    if (name == "observed") return observed();
    if (name == "naive") return naive();
    if (name == "freq" || name == "frequency") return frequency();
    if (name == "freq_simple" || name == "freq-simple") return frequency_simple();
    if (name == "bucket" || name == "bucket_naive" || name == "bucket-naive")
        return bucket(Leaf::naive);
    if (name == "bucket_freq" || name == "bucket-freq") return bucket(Leaf::frequency);
    if (name == "mc" || name == "monte-carlo" || name == "monte_carlo") return monte_carlo();
    return std::nullopt;
}

double sum_observed(const IntegratedSample& sample) {
    double total = 0.0;
    for (double v : sample.values()) total += v;
    return total;
}

double singleton_value_sum(const IntegratedSample& sample) {
    double total = 0.0;
    for (std::size_t i = 0; i < sample.unique_count(); ++i)
        if (sample.multiplicities()[i] == 1) total += sample.values()[i];
    return total;
}

namespace {

struct DeltaInputs {
    double n, c, f1, gamma_sq;
};

DeltaInputs delta_inputs(const IntegratedSample& sample) {
    FrequencyStatistics fs = frequency_statistics(sample);
    if (fs.n == 0) throw EmptySample("delta estimate undefined for an empty sample");
    if (fs.all_singletons())
        throw DivergentEstimate("delta estimate diverges on an all-singleton sample");
    double gamma_sq = fs.n >= 2 ? cv_squared(fs) : 0.0;
    return {static_cast<double>(fs.n), static_cast<double>(fs.c),
            static_cast<double>(fs.singletons()), gamma_sq};
}

} // namespace

double naive_delta(const IntegratedSample& sample) {
    DeltaInputs in = delta_inputs(sample);
    if (in.f1 == 0.0) return 0.0;
    return sum_observed(sample) * in.f1 * (in.c + in.gamma_sq * in.n) / (in.c * (in.n - in.f1));
}

double freq_delta(const IntegratedSample& sample) {
    DeltaInputs in = delta_inputs(sample);
    if (in.f1 == 0.0) return 0.0;
    return singleton_value_sum(sample) * (in.c + in.gamma_sq * in.n) / (in.n - in.f1);
}

double freq_delta_simple(const IntegratedSample& sample) {
    DeltaInputs in = delta_inputs(sample);
    if (in.f1 == 0.0) return 0.0;
    return singleton_value_sum(sample) * in.c / (in.n - in.f1);
}

EstimateReport estimate_sum(const IntegratedSample& sample, EstimatorKind kind,
                            double trust_threshold, const MCConfig* mc) {
    EstimateReport report;
    report.phi_obs = sum_observed(sample);

    if (kind.variant == EstimatorKind::Variant::monte_carlo) {
        MCConfig defaults;
        return mc_sum_estimate(sample, mc ? *mc : defaults, trust_threshold);
    }

    FrequencyStatistics fs = frequency_statistics(sample);
    if (kind.variant != EstimatorKind::Variant::observed && fs.n == 0)
        throw EmptySample("cannot estimate over an empty sample");

    if (fs.n == 0) { // observed over nothing
        report.phi_hat = report.phi_obs;
        return report;
    }

    report.coverage = sample_coverage(fs);
    report.n_hat = static_cast<double>(fs.c);

    if (kind.variant != EstimatorKind::Variant::observed && fs.all_singletons()) {
        // Early prefixes are routinely all-singletons; report instead of throwing
        // so replay series stay total.
        report.divergent = true;
        report.phi_hat = report.phi_obs;
        return report;
    }

    if (fs.n >= 2 && !fs.all_singletons()) report.gamma_sq = cv_squared(fs);

    switch (kind.variant) {
        case EstimatorKind::Variant::observed:
            break;
        case EstimatorKind::Variant::naive:
            report.delta = naive_delta(sample);
            report.n_hat = chao92(fs);
            break;
        case EstimatorKind::Variant::frequency:
            report.delta = freq_delta(sample);
            report.n_hat = chao92(fs);
            break;
        case EstimatorKind::Variant::frequency_simple:
            report.delta = freq_delta_simple(sample);
            report.n_hat = static_cast<double>(fs.c) / report.coverage;
            break;
        case EstimatorKind::Variant::bucket: {
            BucketEstimate estimate = dynamic_buckets(sample, kind.leaf);
            report.delta = estimate.total_delta;
            double n_hat = 0.0;
            for (const Bucket& b : estimate.buckets) {
                if (b.stats.n == 0) continue;
                n_hat += (b.stats.all_singletons() || b.stats.n < 2)
                             ? static_cast<double>(b.stats.c)
                             : chao92(b.stats);
            }
            report.n_hat = n_hat;
            break;
        }
        case EstimatorKind::Variant::monte_carlo:
            break; // handled above
    }

    report.phi_hat = report.phi_obs + report.delta;
    report.trust = report.coverage >= trust_threshold;
    return report;
}

} // namespace uu
