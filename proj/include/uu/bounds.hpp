#pragma once

#include <optional>

#include "uu/frequency.hpp"
#include "uu/sample.hpp"

namespace uu {

struct BoundConfig {
    double epsilon = 0.01; // bound holds with probability >= 1 - epsilon
    double z = 3.0;        // sigma multiplier for the worst-case mean
};

// Good-Turing concentration bound on the missing mass:
//   f1/n + (2*sqrt(2) + sqrt(3)) * sqrt(ln(3/epsilon) / n).
// Can exceed 1 for small n; callers must treat that as vacuous. Natural log.
double missing_mass_bound(const FrequencyStatistics& fs, double epsilon = 0.01);

// c / (1 - missing_mass_bound), or nullopt when the mass bound is vacuous.
std::optional<double> count_upper_bound(const FrequencyStatistics& fs, double epsilon = 0.01);

// Worst-case mean of the ground truth: mean + z * stddev over the unique
// observed values (population formula). Throws InsufficientUnique when c < 2.
double mean_upper_bound(const IntegratedSample& sample, double z = 3.0);

// Product of the two worst cases, bounding the adjusted total phi_hat_D.
// nullopt when no finite bound exists (vacuous mass bound, or c < 2).
std::optional<double> delta_upper_bound(const IntegratedSample& sample,
                                        const BoundConfig& config = {});

} // namespace uu
