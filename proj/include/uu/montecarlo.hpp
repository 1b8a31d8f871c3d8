#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "uu/estimators.hpp"
#include "uu/rng.hpp"
#include "uu/sample.hpp"

namespace uu {

std::vector<double> default_lambda_grid(); // -0.4 .. 0.4 step 0.1

struct MCConfig {
    std::size_t nb_runs = 10;      // simulation repetitions per grid point
    std::size_t n_grid_steps = 10; // steps over theta_N between c and chao92
    std::vector<double> lambda_grid = default_lambda_grid();
    std::uint64_t seed = 0;
    double smoothing_mass = 1e-6; // probability assigned to padded classes
    bool per_source_divergence = false; // experimental, see mc_distance
};

struct MCGridPoint {
    double theta_n = 0.0;
    double theta_lambda = 0.0;
    double divergence = 0.0; // average KL over nb_runs
};

struct MCResult {
    double n_hat = 0.0;      // clamped to [c, chao92]
    double lambda_hat = 0.0; // clamped to the lambda grid range
    std::vector<MCGridPoint> surface;
    MCGridPoint fitted_minimum;
    bool used_surface_fit = false; // false: raw grid argmin fallback
};

// One simulated sampling process: theta_n items get exponential-shape
// publicity with skew theta_lambda, every source draws its observed size
// without replacement, and the merged occurrence histogram is returned
// (length theta_n, zeros for undrawn items).
// Throws SourceLargerThanPopulation when some n_j > theta_n.
std::vector<std::size_t> simulate_once(std::size_t theta_n, double theta_lambda,
                                       std::span<const std::size_t> source_sizes, Rng& rng);

// Rank-aligned relative-frequency vectors: both sides sorted by descending
// multiplicity, normalized by their totals, zero-padded to a common length of
// max(c_obs, c_sim).
std::pair<std::vector<double>, std::vector<double>> align_frequencies(
    std::span<const std::size_t> observed_multiplicities,
    std::span<const std::size_t> simulated_counts);
std::pair<std::vector<double>, std::vector<double>> align_frequencies(
    const IntegratedSample& observed, std::span<const std::size_t> simulated_counts);

// Replace zero entries by `mass` and renormalize both vectors to sum 1, making
// the downstream KL-divergence finite.
std::pair<std::vector<double>, std::vector<double>> smooth(std::vector<double> p,
                                                           std::vector<double> q,
                                                           double mass);

// Discrete KL-divergence, sum p_i ln(p_i / q_i). Requires equal lengths
// (DimensionMismatch) and strictly positive entries summing to 1 within 1e-9
// (InvalidDistribution).
double kl_divergence(std::span<const double> p, std::span<const double> q);

// Average divergence between the observed sample and nb_runs simulations at
// the candidate (theta_n, theta_lambda). Each run draws its RNG stream from
// (seed, theta_n, theta_lambda, run), so grid evaluation order is irrelevant.
double mc_distance(std::size_t theta_n, double theta_lambda,
                   const IntegratedSample& sample, const MCConfig& config);

// Grid search over [c, chao92] x lambda_grid followed by a bivariate
// quadratic least-squares fit of the divergence surface; the surface
// minimizer (or the raw grid argmin when the fit is not convex) is clamped to
// the grid box. Degenerate grid (chao92 = c) returns n_hat = c directly.
MCResult mc_estimate_n(const IntegratedSample& sample, const MCConfig& config = {});

// Naive value estimate driven by the Monte-Carlo count:
// delta = (phi_K / c) * (n_hat - c).
EstimateReport mc_sum_estimate(const IntegratedSample& sample, const MCConfig& config = {},
                               double trust_threshold = kDefaultTrustThreshold);

} // namespace uu
