#include "uu/bounds.hpp"

#include <cmath>

#include "uu/errors.hpp"

namespace uu {

namespace {
// constant of the Good-Turing concentration inequality
const double kSlackFactor = 2.0 * std::sqrt(2.0) + std::sqrt(3.0);
} // namespace

double missing_mass_bound(const FrequencyStatistics& fs, double epsilon) {
    if (fs.n == 0) throw EmptySample("missing-mass bound undefined for an empty sample");
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw InvalidConfig("epsilon must lie in (0, 1)");
    const double n = static_cast<double>(fs.n);
    return static_cast<double>(fs.singletons()) / n +
           kSlackFactor * std::sqrt(std::log(3.0 / epsilon) / n);
}

std::optional<double> count_upper_bound(const FrequencyStatistics& fs, double epsilon) {
    const double m0 = missing_mass_bound(fs, epsilon);
    if (m0 >= 1.0) return std::nullopt; // vacuous; surfacing a clamp would fake confidence
    return static_cast<double>(fs.c) / (1.0 - m0);
}

double mean_upper_bound(const IntegratedSample& sample, double z) {
    if (z <= 0.0) throw InvalidConfig("z must be positive");
    const std::size_t c = sample.unique_count();
    if (c < 2) throw InsufficientUnique("worst-case mean needs at least two unique values");
    double mean = 0.0;
    for (double v : sample.values()) mean += v;
    mean /= static_cast<double>(c);
    double var = 0.0;
    for (double v : sample.values()) var += (v - mean) * (v - mean);
    var /= static_cast<double>(c); // population formula over the unique values
    return mean + z * std::sqrt(var);
}

std::optional<double> delta_upper_bound(const IntegratedSample& sample,
                                        const BoundConfig& config) {
    if (sample.unique_count() < 2) return std::nullopt;
    const FrequencyStatistics fs = frequency_statistics(sample);
    const auto count_bound = count_upper_bound(fs, config.epsilon);
    if (!count_bound) return std::nullopt;
    return mean_upper_bound(sample, config.z) * *count_bound;
}

} // namespace uu
