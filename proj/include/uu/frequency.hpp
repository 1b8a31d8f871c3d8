#pragma once

#include <cstddef>
#include <map>
#include <span>

#include "uu/sample.hpp"

namespace uu {

// f-statistics of a sample: f[j] = number of entities observed exactly j times.
// Sufficient statistic for all coverage-based estimators.
// Invariants: sum_j f_j = c, sum_j j*f_j = n.
struct FrequencyStatistics {
    std::size_t n = 0;
    std::size_t c = 0;
    std::map<std::size_t, std::size_t> f; // only non-zero entries

    std::size_t f_at(std::size_t j) const {
        auto it = f.find(j);
        return it == f.end() ? 0 : it->second;
    }
    std::size_t singletons() const { return f_at(1); }

    // sum_j j*(j-1)*f_j, the duplication term of the CV estimate
    double duplication_sum() const;

    // n > 0 and every entity a singleton: coverage estimate is 0 and the
    // Chao92 estimate diverges
    bool all_singletons() const { return n > 0 && singletons() == n; }
};

FrequencyStatistics frequency_statistics(const IntegratedSample& sample);
FrequencyStatistics frequency_statistics(std::span<const std::size_t> multiplicities);

// Good-Turing sample coverage estimate, 1 - f_1/n. Throws EmptySample when n = 0.
double sample_coverage(const FrequencyStatistics& fs);

// Squared coefficient-of-variance estimate,
//   max{ (c/C^) * sum_i i(i-1)f_i / (n(n-1)) - 1, 0 }.
// Throws InsufficientSample (n < 2) or ZeroCoverage (all singletons).
double cv_squared(const FrequencyStatistics& fs);

// Chao92 estimate of the number of unique entities in the ground truth,
//   c/C^ + n(1-C^)/C^ * cv_squared.
// Always >= c when defined. Throws like cv_squared plus EmptySample.
double chao92(const FrequencyStatistics& fs);

struct CoverageStats {
    double c_hat = 0.0;    // sample coverage
    double gamma_sq = 0.0; // squared CV estimate
    double n_chao92 = 0.0; // Chao92 count estimate
};

CoverageStats coverage_stats(const FrequencyStatistics& fs);

} // namespace uu
