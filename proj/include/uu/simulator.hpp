#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uu/estimators.hpp"
#include "uu/montecarlo.hpp"
#include "uu/rng.hpp"
#include "uu/sample.hpp"

namespace uu {

// Ground-truth population: item k has attribute values[k] and publicity[k]
// (probability of being mentioned by a source).
struct GroundTruth {
    std::vector<double> values;
    std::vector<double> publicity; // sums to 1
    double lambda = 0.0;
    double rho = 0.0;

    std::size_t n_items() const { return values.size(); }
    double true_sum() const;
    double true_mean() const;
    double true_min() const;
    double true_max() const;
    double true_cv() const; // CV of the publicity vector
};

struct StreakerSpec {
    std::size_t at_n = 0; // arrival position of the streaker's block
    std::size_t size = 0; // items it contributes (as one extra source)
};

enum class Arrival {
    round_robin, // sources interleaved, mimics concurrent answers
    sequential   // source 1 completes before source 2 starts
};

struct SimConfig {
    std::size_t n_items = 100;
    double value_min = 10.0;
    double value_step = 10.0;
    double value_max = 1000.0;
    double lambda = 0.0; // publicity skew
    double rho = 0.0;    // publicity-value correlation
    std::size_t num_sources = 100;
    std::size_t source_size = 5;
    std::vector<std::size_t> source_sizes; // overrides num_sources x source_size when set
    std::optional<StreakerSpec> streaker;
    Arrival arrival = Arrival::round_robin;
    std::uint64_t seed = 0;

    std::vector<std::size_t> resolved_source_sizes() const;
};

// Arithmetic value sequence plus exponential-shape publicity. rho = 1 pairs
// the highest publicity with the largest value; rho = 0 permutes the pairing
// at random; intermediate rho applies adjacent-rank swaps until the Spearman
// correlation drops to the target. Throws InvalidConfig.
GroundTruth make_ground_truth(const SimConfig& config);

// Every source draws its size without replacement, weighted by publicity;
// observations are merged per config.arrival, and the streaker (if any) is
// spliced in as one extra source at its arrival position.
IntegratedSample draw_sources(const GroundTruth& gt, const SimConfig& config, Rng& rng);

// make_ground_truth + draw_sources with streams derived from config.seed.
IntegratedSample simulate_sample(const SimConfig& config);

double spearman_rank_correlation(std::span<const double> a, std::span<const double> b);

// One averaged time-series row of a synthetic experiment.
struct SweepRow {
    std::size_t n = 0;
    std::string estimator;
    double phi_mean = 0.0;
    double phi_std = 0.0;
    double phi_true = 0.0;
};

// Prefix-replay of `replications` independently drawn samples at every
// `stride` observations (plus the final step), per estimator. Replications
// run in parallel with derived seeds; rows come back in (n, estimator) order.
std::vector<SweepRow> run_experiment(const SimConfig& config,
                                     const std::vector<EstimatorKind>& kinds,
                                     std::size_t replications, std::size_t stride,
                                     const MCConfig& mc = {});

} // namespace uu
