#include "uu/frequency.hpp"

#include "uu/errors.hpp"

namespace uu {

double FrequencyStatistics::duplication_sum() const {
    double total = 0.0;
    for (const auto& [j, count] : f)
        total += static_cast<double>(j) * static_cast<double>(j - 1) * static_cast<double>(count);
    return total;
}

FrequencyStatistics frequency_statistics(std::span<const std::size_t> multiplicities) {
    FrequencyStatistics fs;
    for (std::size_t m : multiplicities) {
        if (m == 0) continue;
        fs.n += m;
        ++fs.c;
        ++fs.f[m];
    }
    return fs;
}

FrequencyStatistics frequency_statistics(const IntegratedSample& sample) {
    return frequency_statistics(std::span<const std::size_t>(sample.multiplicities()));
}

double sample_coverage(const FrequencyStatistics& fs) {
    if (fs.n == 0) throw EmptySample("sample coverage undefined for an empty sample");
    return 1.0 - static_cast<double>(fs.singletons()) / static_cast<double>(fs.n);
}

double cv_squared(const FrequencyStatistics& fs) {
    if (fs.n < 2) throw InsufficientSample("CV estimate needs n >= 2");
    double c_hat = sample_coverage(fs);
    if (c_hat <= 0.0) throw ZeroCoverage("CV estimate undefined at zero sample coverage");
    double n = static_cast<double>(fs.n);
    double raw = (static_cast<double>(fs.c) / c_hat) * fs.duplication_sum() / (n * (n - 1.0)) - 1.0;
    return raw > 0.0 ? raw : 0.0;
}

double chao92(const FrequencyStatistics& fs) {
    if (fs.n == 0) throw EmptySample("Chao92 undefined for an empty sample");
    double c_hat = sample_coverage(fs);
    if (c_hat <= 0.0)
        throw ZeroCoverage("Chao92 diverges on an all-singleton sample (n = f1)");
    if (fs.n < 2) throw InsufficientSample("Chao92 needs n >= 2");
    double n = static_cast<double>(fs.n);
    return static_cast<double>(fs.c) / c_hat + n * (1.0 - c_hat) / c_hat * cv_squared(fs);
}

CoverageStats coverage_stats(const FrequencyStatistics& fs) {
    CoverageStats stats;
    stats.c_hat = sample_coverage(fs);
    stats.gamma_sq = cv_squared(fs);
    stats.n_chao92 =
        static_cast<double>(fs.c) / stats.c_hat +
        static_cast<double>(fs.n) * (1.0 - stats.c_hat) / stats.c_hat * stats.gamma_sq;
    return stats;
}

} // namespace uu
