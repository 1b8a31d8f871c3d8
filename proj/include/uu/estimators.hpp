#pragma once

#include <optional>
#include <string>

#include "uu/frequency.hpp"
#include "uu/sample.hpp"

namespace uu {

struct MCConfig; // montecarlo.hpp

// Per-bucket leaf estimator for the bucket estimators.
enum class Leaf { naive, frequency };

struct EstimatorKind {
    enum class Variant { observed, naive, frequency, frequency_simple, bucket, monte_carlo };

    Variant variant = Variant::naive;
    Leaf leaf = Leaf::naive; // only meaningful for Variant::bucket

    static EstimatorKind observed() { return {Variant::observed}; }
    static EstimatorKind naive() { return {Variant::naive}; }
    static EstimatorKind frequency() { return {Variant::frequency}; }
    static EstimatorKind frequency_simple() { return {Variant::frequency_simple}; }
    static EstimatorKind bucket(Leaf leaf = Leaf::naive) { return {Variant::bucket, leaf}; }
    static EstimatorKind monte_carlo() { return {Variant::monte_carlo}; }

    std::string name() const;
    static std::optional<EstimatorKind> parse(const std::string& name);

    bool operator==(const EstimatorKind&) const = default;
};

// Default trust threshold on sample coverage; Chao92 is unreliable below ~0.4.
inline constexpr double kDefaultTrustThreshold = 0.4;

struct EstimateReport {
    double phi_obs = 0.0;  // aggregate over observed unique entities
    double delta = 0.0;    // estimated impact of the unobserved entities
    double phi_hat = 0.0;  // phi_obs + delta
    double n_hat = 0.0;    // population count estimate behind delta
    double coverage = 0.0; // sample coverage estimate
    double gamma_sq = 0.0; // squared CV estimate (0 when undefined)
    bool trust = false;    // coverage >= threshold
    bool divergent = false; // all-singleton sample; delta forced to 0
    std::optional<double> upper_bound; // worst-case bound on phi_hat, if requested
};

// phi_K: sum of the attribute over unique observed entities.
double sum_observed(const IntegratedSample& sample);

// phi_f1: sum of the attribute over singletons.
double singleton_value_sum(const IntegratedSample& sample);

// Mean-substitution delta, phi_K * f1 * (c + g^2 n) / (c * (n - f1)).
// Equivalently (phi_K / c) * (chao92 - c). Throws DivergentEstimate when n = f1.
double naive_delta(const IntegratedSample& sample);

// Singleton-mean delta, phi_f1 * (c + g^2 n) / (n - f1).
double freq_delta(const IntegratedSample& sample);

// Good-Turing variant assuming g^2 = 0: phi_f1 * c / (n - f1).
double freq_delta_simple(const IntegratedSample& sample);

// Dispatch to the requested estimator and assemble the full report.
// Divergent (all-singleton) samples are reported with delta = 0 rather than
// thrown, so prefix-replay series stay total. `mc` supplies the Monte-Carlo
// configuration and is only consulted for Variant::monte_carlo (defaults used
// when null).
EstimateReport estimate_sum(const IntegratedSample& sample, EstimatorKind kind,
                            double trust_threshold = kDefaultTrustThreshold,
                            const MCConfig* mc = nullptr);

} // namespace uu
