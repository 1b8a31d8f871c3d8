#include "uu/sampling.hpp"

#include <cmath>

#include "uu/errors.hpp"

namespace uu {

std::vector<double> publicity_weights(std::size_t n_items, double lambda, double rank_scale) {
    std::vector<double> weights(n_items);
    double total = 0.0;
    for (std::size_t i = 0; i < n_items; ++i) {
        const double rank = static_cast<double>(i + 1);
        weights[i] = std::exp(-lambda * rank * rank_scale / static_cast<double>(n_items));
        total += weights[i];
    }
    for (double& w : weights) w /= total;
    return weights;
}

std::vector<std::size_t> weighted_sample_without_replacement(std::span<const double> weights,
                                                             std::size_t k, Rng& rng) {
    if (k > weights.size())
        throw InvalidConfig("cannot draw " + std::to_string(k) + " distinct items out of " +
                            std::to_string(weights.size()));

    std::vector<double> remaining(weights.begin(), weights.end());
    double total = 0.0;
    for (double w : remaining) total += w;

    std::vector<std::size_t> drawn;
    drawn.reserve(k);
    for (std::size_t d = 0; d < k; ++d) {
        const double u = rng.next_double() * total;
        double acc = 0.0;
        std::size_t pick = remaining.size();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (remaining[i] <= 0.0) continue;
            acc += remaining[i];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        if (pick == remaining.size()) { // accumulated rounding; take the last live index
            for (std::size_t i = remaining.size(); i-- > 0;) {
                if (remaining[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
            if (pick == remaining.size())
                throw InvalidConfig("not enough positive weights to draw from");
        }
        drawn.push_back(pick);
        total -= remaining[pick];
        remaining[pick] = 0.0;
    }
    return drawn;
}

} // namespace uu
