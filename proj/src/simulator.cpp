#include "uu/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uu/errors.hpp"
#include "uu/parallel.hpp"
#include "uu/sampling.hpp"

namespace uu {

namespace {

// stream tags for seed derivation
constexpr std::uint64_t kTagGroundTruth = 0x67745f7065726dULL;
constexpr std::uint64_t kTagDraw = 0x647261775f73ULL;
constexpr std::uint64_t kTagReplication = 0x7265706cULL;
constexpr std::uint64_t kTagEstimate = 0x65737469ULL;

std::vector<double> ranks_of(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (v[a] != v[b]) return v[a] < v[b];
        return a < b;
    });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
        i = j + 1;
    }
    return ranks;
}

std::string entity_name(std::size_t item) { return "e" + std::to_string(item + 1); }

} // namespace

double GroundTruth::true_sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}
double GroundTruth::true_mean() const { return true_sum() / static_cast<double>(values.size()); }
double GroundTruth::true_min() const { return *std::min_element(values.begin(), values.end()); }
double GroundTruth::true_max() const { return *std::max_element(values.begin(), values.end()); }

double GroundTruth::true_cv() const {
    const double n = static_cast<double>(publicity.size());
    const double mean = 1.0 / n; // publicity sums to 1
    double var = 0.0;
    for (double p : publicity) var += (p - mean) * (p - mean);
    return std::sqrt(var / n) / mean;
}

std::vector<std::size_t> SimConfig::resolved_source_sizes() const {
    if (!source_sizes.empty()) return source_sizes;
    return std::vector<std::size_t>(num_sources, source_size);
}

double spearman_rank_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw InvalidConfig("Spearman correlation needs two equally long vectors");
    const auto ra = ranks_of(a);
    const auto rb = ranks_of(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (ra[i] - mean) * (rb[i] - mean);
        var_a += (ra[i] - mean) * (ra[i] - mean);
        var_b += (rb[i] - mean) * (rb[i] - mean);
    }
    if (var_a == 0.0 || var_b == 0.0) return 0.0;
    return cov / std::sqrt(var_a * var_b);
}

GroundTruth make_ground_truth(const SimConfig& config) {
    if (config.n_items == 0) throw InvalidConfig("population must contain at least one item");
    if (config.value_step <= 0.0) throw InvalidConfig("value step must be positive");
    if (config.rho < 0.0 || config.rho > 1.0) throw InvalidConfig("rho must lie in [0, 1]");
    const double expected_max =
        config.value_min + config.value_step * static_cast<double>(config.n_items - 1);
    if (std::abs(expected_max - config.value_max) > 1e-9)
        throw InvalidConfig("value_min/value_step/value_max must describe exactly n_items values");

    GroundTruth gt;
    gt.lambda = config.lambda;
    gt.rho = config.rho;
    gt.values.resize(config.n_items);
    for (std::size_t i = 0; i < config.n_items; ++i)
        gt.values[i] = config.value_min + config.value_step * static_cast<double>(i);

    // weights[r] is the publicity of rank r+1; rank 1 is the most public
    const std::vector<double> weights = publicity_weights(config.n_items, config.lambda);

    // rank_of[k]: publicity rank (0-based) of the item holding the k-th
    // smallest value. rho = 1 pairs the largest value with rank 0.
    std::vector<std::size_t> rank_of(config.n_items);
    for (std::size_t k = 0; k < config.n_items; ++k) rank_of[k] = config.n_items - 1 - k;

    Rng rng(mix_seed(config.seed, {kTagGroundTruth}));
    if (config.rho <= 0.0) {
        for (std::size_t k = config.n_items - 1; k > 0; --k)
            std::swap(rank_of[k], rank_of[rng.next_index(k + 1)]);
    } else if (config.rho < 1.0 && config.n_items >= 2) {
        // Random adjacent swaps until the Spearman correlation between
        // publicity and value reaches the target (checked in batches).
        gt.publicity.resize(config.n_items);
        const std::size_t batch = std::max<std::size_t>(config.n_items / 4, 1);
        for (std::size_t guard = 0; guard < 200 * config.n_items; ++guard) {
            for (std::size_t s = 0; s < batch; ++s) {
                const std::size_t k = rng.next_index(config.n_items - 1);
                std::swap(rank_of[k], rank_of[k + 1]);
            }
            for (std::size_t k = 0; k < config.n_items; ++k)
                gt.publicity[k] = weights[rank_of[k]];
            if (spearman_rank_correlation(gt.publicity, gt.values) <= config.rho) break;
        }
    }

    gt.publicity.resize(config.n_items);
    for (std::size_t k = 0; k < config.n_items; ++k) gt.publicity[k] = weights[rank_of[k]];
    return gt;
}

IntegratedSample draw_sources(const GroundTruth& gt, const SimConfig& config, Rng& rng) {
    const std::vector<std::size_t> sizes = config.resolved_source_sizes();
    for (std::size_t n_j : sizes)
        if (n_j > gt.n_items())
            throw InvalidConfig("a source cannot exceed the population size");
    if (config.streaker && config.streaker->size > gt.n_items())
        throw InvalidConfig("the streaker cannot exceed the population size");

    std::vector<std::vector<std::size_t>> draws;
    draws.reserve(sizes.size());
    for (std::size_t n_j : sizes)
        draws.push_back(weighted_sample_without_replacement(gt.publicity, n_j, rng));

    std::vector<Observation> merged;
    merged.reserve(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}));
    auto observation = [&](std::size_t source, std::size_t item) {
        return Observation{"s" + std::to_string(source + 1), entity_name(item), gt.values[item]};
    };
    if (config.arrival == Arrival::round_robin) {
        const std::size_t longest =
            sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
        for (std::size_t k = 0; k < longest; ++k)
            for (std::size_t j = 0; j < draws.size(); ++j)
                if (k < draws[j].size()) merged.push_back(observation(j, draws[j][k]));
    } else {
        for (std::size_t j = 0; j < draws.size(); ++j)
            for (std::size_t item : draws[j]) merged.push_back(observation(j, item));
    }

    if (config.streaker && config.streaker->size > 0) {
        const auto items =
            weighted_sample_without_replacement(gt.publicity, config.streaker->size, rng);
        std::vector<Observation> block;
        block.reserve(items.size());
        for (std::size_t item : items)
            block.push_back({"streaker", entity_name(item), gt.values[item]});
        const std::size_t at = std::min(config.streaker->at_n, merged.size());
        merged.insert(merged.begin() + static_cast<std::ptrdiff_t>(at), block.begin(),
                      block.end());
    }

    return build_sample(merged);
}

IntegratedSample simulate_sample(const SimConfig& config) {
    GroundTruth gt = make_ground_truth(config);
    Rng rng(mix_seed(config.seed, {kTagDraw}));
    return draw_sources(gt, config, rng);
}

std::vector<SweepRow> run_experiment(const SimConfig& config,
                                     const std::vector<EstimatorKind>& kinds,
                                     std::size_t replications, std::size_t stride,
                                     const MCConfig& mc) {
    if (replications == 0) throw InvalidConfig("need at least one replication");
    if (stride == 0) throw InvalidConfig("stride must be positive");

    const GroundTruth reference = make_ground_truth(config);
    const double phi_true = reference.true_sum();

    std::vector<std::size_t> steps;
    {
        const auto sizes = config.resolved_source_sizes();
        std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
        if (config.streaker) total += config.streaker->size;
        for (std::size_t s = stride; s < total; s += stride) steps.push_back(s);
        if (total > 0) steps.push_back(total);
    }

    // phi_hat[rep][step][kind]
    std::vector<std::vector<std::vector<double>>> phi_hat(
        replications,
        std::vector<std::vector<double>>(steps.size(), std::vector<double>(kinds.size(), 0.0)));

    parallel_for(replications, [&](std::size_t rep) {
        SimConfig rep_config = config;
        rep_config.seed = mix_seed(config.seed, {kTagReplication, rep});
        const GroundTruth gt = make_ground_truth(rep_config);
        Rng rng(mix_seed(rep_config.seed, {kTagDraw}));
        const IntegratedSample full = draw_sources(gt, rep_config, rng);

        SampleBuilder builder;
        std::size_t consumed = 0;
        for (std::size_t si = 0; si < steps.size(); ++si) {
            while (consumed < steps[si] && consumed < full.n())
                builder.add(full.observations()[consumed++]);
            const IntegratedSample prefix = builder.snapshot();
            for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
                MCConfig mc_step = mc;
                mc_step.seed = mix_seed(rep_config.seed, {kTagEstimate, steps[si]});
                const EstimateReport report =
                    estimate_sum(prefix, kinds[ki], kDefaultTrustThreshold, &mc_step);
                phi_hat[rep][si][ki] = report.phi_hat;
            }
        }
    });

    std::vector<SweepRow> rows;
    rows.reserve(steps.size() * kinds.size());
    for (std::size_t si = 0; si < steps.size(); ++si) {
        for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
            double mean = 0.0;
            for (std::size_t rep = 0; rep < replications; ++rep) mean += phi_hat[rep][si][ki];
            mean /= static_cast<double>(replications);
            double var = 0.0;
            for (std::size_t rep = 0; rep < replications; ++rep) {
                const double d = phi_hat[rep][si][ki] - mean;
                var += d * d;
            }
            var /= static_cast<double>(replications);
            rows.push_back({steps[si], kinds[ki].name(), mean, std::sqrt(var), phi_true});
        }
    }
    return rows;
}

} // namespace uu
