#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uu/rng.hpp"

namespace uu {

// Rank scaling applied to the exponential publicity shape, exp(-lambda * rank * scale / N).
// Keeps the skew of a given lambda comparable across population sizes. The
// simulator and the Monte-Carlo estimator share this constant so that
// self-recovery of simulated populations is meaningful.
inline constexpr double kPublicityRankScale = 1.0;

// Publicity weights for n_items ranks (rank 1 gets the largest weight when
// lambda > 0, uniform at lambda = 0, reversed for negative lambda).
// Normalized to sum 1.
std::vector<double> publicity_weights(std::size_t n_items, double lambda,
                                      double rank_scale = kPublicityRankScale);

// Sequential weighted draws with removal: k distinct indices, in draw order.
// Weights must be non-negative with at least k strictly positive entries.
std::vector<std::size_t> weighted_sample_without_replacement(
    std::span<const double> weights, std::size_t k, Rng& rng);

} // namespace uu
