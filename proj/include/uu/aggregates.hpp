#pragma once

#include <optional>

#include "uu/estimators.hpp"
#include "uu/sample.hpp"

namespace uu {

struct MCConfig;

enum class CountEstimator { chao92, monte_carlo };
enum class Extreme { min, max };

// MIN/MAX are gated, not extrapolated: the observed extreme is reported only
// when the extreme-end bucket is judged complete.
struct ExtremeReport {
    Extreme which = Extreme::max;
    double observed_extreme = 0.0;
    bool reported = false;
    std::optional<double> value; // set iff reported; equals observed_extreme
};

// COUNT: phi_obs = c, n_hat from the chosen count estimator, delta = n_hat - c.
EstimateReport estimate_count(const IntegratedSample& sample,
                              CountEstimator kind = CountEstimator::chao92,
                              double trust_threshold = kDefaultTrustThreshold,
                              const MCConfig* mc = nullptr);

// AVG: weighted average of per-bucket means over the dynamic buckets, weights
// the per-bucket Chao92 counts (observed c_b when a bucket diverges).
EstimateReport estimate_avg(const IntegratedSample& sample,
                            double trust_threshold = kDefaultTrustThreshold);

// Report the observed extreme iff the extreme-end dynamic bucket has a
// rounded unknown count of zero (n_hat_b - c_b < 0.5).
ExtremeReport estimate_extreme(const IntegratedSample& sample, Extreme which);

} // namespace uu
