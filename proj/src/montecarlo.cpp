#include "uu/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>

#include "uu/errors.hpp"
#include "uu/sampling.hpp"

namespace uu {

namespace {

// draws per source, in source order
std::vector<std::vector<std::size_t>> simulate_draws(std::size_t theta_n, double theta_lambda,
                                                     std::span<const std::size_t> source_sizes,
                                                     Rng& rng) {
    for (std::size_t n_j : source_sizes)
        if (n_j > theta_n)
            throw SourceLargerThanPopulation(
                "source of size " + std::to_string(n_j) +
                " cannot draw distinct items from a population of " + std::to_string(theta_n));
    std::vector<double> weights = publicity_weights(theta_n, theta_lambda);
    std::vector<std::vector<std::size_t>> draws;
    draws.reserve(source_sizes.size());
    for (std::size_t n_j : source_sizes)
        draws.push_back(weighted_sample_without_replacement(weights, n_j, rng));
    return draws;
}

std::vector<double> descending_profile(std::vector<double> counts) {
    std::sort(counts.begin(), counts.end(), std::greater<double>());
    return counts;
}

double smoothed_kl(std::vector<double> p_counts, std::vector<double> q_counts, double mass) {
    // rank alignment, normalization, padding, smoothing, then KL
    p_counts = descending_profile(std::move(p_counts));
    q_counts = descending_profile(std::move(q_counts));
    const std::size_t len = std::max(p_counts.size(), q_counts.size());
    std::vector<double> p(len, 0.0), q(len, 0.0);
    const double p_total = std::accumulate(p_counts.begin(), p_counts.end(), 0.0);
    const double q_total = std::accumulate(q_counts.begin(), q_counts.end(), 0.0);
    for (std::size_t i = 0; i < p_counts.size(); ++i) p[i] = p_counts[i] / p_total;
    for (std::size_t i = 0; i < q_counts.size(); ++i) q[i] = q_counts[i] / q_total;
    auto [ps, qs] = smooth(std::move(p), std::move(q), mass);
    return kl_divergence(ps, qs);
}

// Solves A x = b in place, n x n with partial pivoting; false when singular.
bool solve_linear(std::vector<std::vector<double>>& a, std::vector<double>& b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= factor * a[col][k];
            b[r] -= factor * b[col];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t k = col + 1; k < n; ++k) b[col] -= a[col][k] * b[k];
        b[col] /= a[col][col];
    }
    return true;
}

struct SurfaceMinimum {
    double theta_n, theta_lambda, value;
};

// Full bivariate quadratic least squares over the grid samples; returns the
// unconstrained minimizer only when the fitted quadratic is convex.
std::optional<SurfaceMinimum> fit_quadratic_minimum(const std::vector<MCGridPoint>& surface) {
    if (surface.size() < 6) return std::nullopt;

    double mx = 0.0, my = 0.0;
    for (const auto& pt : surface) {
        mx += pt.theta_n;
        my += pt.theta_lambda;
    }
    mx /= static_cast<double>(surface.size());
    my /= static_cast<double>(surface.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& pt : surface) {
        sx += (pt.theta_n - mx) * (pt.theta_n - mx);
        sy += (pt.theta_lambda - my) * (pt.theta_lambda - my);
    }
    sx = std::sqrt(sx / static_cast<double>(surface.size()));
    sy = std::sqrt(sy / static_cast<double>(surface.size()));
    if (sx < 1e-12 || sy < 1e-12) return std::nullopt;

    std::vector<std::vector<double>> ata(6, std::vector<double>(6, 0.0));
    std::vector<double> atz(6, 0.0);
    for (const auto& pt : surface) {
        const double x = (pt.theta_n - mx) / sx;
        const double y = (pt.theta_lambda - my) / sy;
        const std::array<double, 6> phi{1.0, x, y, x * x, y * y, x * y};
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) ata[i][j] += phi[i] * phi[j];
            atz[i] += phi[i] * pt.divergence;
        }
    }
    if (!solve_linear(ata, atz)) return std::nullopt;
    const double b1 = atz[1], b2 = atz[2], b3 = atz[3], b4 = atz[4], b5 = atz[5];

    // Hessian [[2*b3, b5], [b5, 2*b4]] must be positive definite
    const double det = 4.0 * b3 * b4 - b5 * b5;
    if (b3 <= 0.0 || det <= 0.0) return std::nullopt;

    const double x_star = (-2.0 * b4 * b1 + b5 * b2) / det;
    const double y_star = (-2.0 * b3 * b2 + b5 * b1) / det;
    const double value = atz[0] + b1 * x_star + b2 * y_star + b3 * x_star * x_star +
                         b4 * y_star * y_star + b5 * x_star * y_star;
    return SurfaceMinimum{mx + sx * x_star, my + sy * y_star, value};
}

} // namespace

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    for (int i = -4; i <= 4; ++i) grid.push_back(static_cast<double>(i) / 10.0);
    return grid;
}

std::vector<std::size_t> simulate_once(std::size_t theta_n, double theta_lambda,
                                       std::span<const std::size_t> source_sizes, Rng& rng) {
    auto draws = simulate_draws(theta_n, theta_lambda, source_sizes, rng);
    std::vector<std::size_t> counts(theta_n, 0);
    for (const auto& source : draws)
        for (std::size_t idx : source) ++counts[idx];
    return counts;
}

std::pair<std::vector<double>, std::vector<double>> align_frequencies(
    std::span<const std::size_t> observed_multiplicities,
    std::span<const std::size_t> simulated_counts) {
    std::vector<double> obs, sim;
    for (std::size_t m : observed_multiplicities)
        if (m > 0) obs.push_back(static_cast<double>(m));
    for (std::size_t m : simulated_counts)
        if (m > 0) sim.push_back(static_cast<double>(m));
    if (obs.empty() || sim.empty())
        throw EmptySample("cannot align empty frequency profiles");

    obs = descending_profile(std::move(obs));
    sim = descending_profile(std::move(sim));
    const double obs_total = std::accumulate(obs.begin(), obs.end(), 0.0);
    const double sim_total = std::accumulate(sim.begin(), sim.end(), 0.0);
    const std::size_t len = std::max(obs.size(), sim.size());
    std::vector<double> p(len, 0.0), q(len, 0.0);
    for (std::size_t i = 0; i < obs.size(); ++i) p[i] = obs[i] / obs_total;
    for (std::size_t i = 0; i < sim.size(); ++i) q[i] = sim[i] / sim_total;
    return {std::move(p), std::move(q)};
}

std::pair<std::vector<double>, std::vector<double>> align_frequencies(
    const IntegratedSample& observed, std::span<const std::size_t> simulated_counts) {
    return align_frequencies(std::span<const std::size_t>(observed.multiplicities()),
                             simulated_counts);
}

std::pair<std::vector<double>, std::vector<double>> smooth(std::vector<double> p,
                                                           std::vector<double> q, double mass) {
    if (p.size() != q.size())
        throw DimensionMismatch("smooth requires equally long vectors");
    for (auto* vec : {&p, &q}) {
        double total = 0.0;
        for (double& v : *vec) {
            if (v == 0.0) v = mass;
            total += v;
        }
        for (double& v : *vec) v /= total;
    }
    return {std::move(p), std::move(q)};
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw DimensionMismatch("KL-divergence requires equally long vectors");
    if (p.empty()) throw InvalidDistribution("KL-divergence over empty vectors");
    double p_sum = 0.0, q_sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0 || q[i] <= 0.0)
            throw InvalidDistribution("KL-divergence requires strictly positive entries");
        p_sum += p[i];
        q_sum += q[i];
    }
    if (std::abs(p_sum - 1.0) > 1e-9 || std::abs(q_sum - 1.0) > 1e-9)
        throw InvalidDistribution("KL-divergence requires probability vectors summing to 1");
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) kl += p[i] * std::log(p[i] / q[i]);
    return kl < 0.0 ? 0.0 : kl; // clamp away -0 and rounding residue
}

double mc_distance(std::size_t theta_n, double theta_lambda, const IntegratedSample& sample,
                   const MCConfig& config) {
    if (sample.empty()) throw EmptySample("Monte-Carlo distance over an empty sample");
    if (config.nb_runs == 0) throw InvalidConfig("nb_runs must be at least 1");
    if (!(config.smoothing_mass > 0.0) || config.smoothing_mass > 0.01)
        throw InvalidConfig("smoothing mass must lie in (0, 0.01]");

    std::vector<std::size_t> sizes;
    sizes.reserve(sample.source_sizes().size());
    for (const auto& [id, n_j] : sample.source_sizes()) sizes.push_back(n_j);

    // Observed per-source entity indices, only needed for the per-source variant.
    std::vector<std::vector<std::size_t>> obs_by_source;
    if (config.per_source_divergence) {
        std::size_t s = 0;
        std::unordered_map<std::string, std::size_t> source_slot;
        for (const auto& [id, n_j] : sample.source_sizes()) source_slot[id] = s++;
        obs_by_source.resize(sample.source_sizes().size());
        std::unordered_map<std::string, std::size_t> entity_slot;
        for (std::size_t i = 0; i < sample.unique_count(); ++i)
            entity_slot[sample.entity_ids()[i]] = i;
        for (const auto& obs : sample.observations())
            obs_by_source[source_slot[obs.source_id]].push_back(entity_slot[obs.entity_id]);
    }

    double total = 0.0;
    for (std::size_t run = 0; run < config.nb_runs; ++run) {
        Rng rng(mix_seed(config.seed,
                         {theta_n, std::bit_cast<std::uint64_t>(theta_lambda), run}));
        if (!config.per_source_divergence) {
            std::vector<std::size_t> counts = simulate_once(theta_n, theta_lambda, sizes, rng);
            auto [p, q] = align_frequencies(sample, counts);
            auto [ps, qs] = smooth(std::move(p), std::move(q), config.smoothing_mass);
            total += kl_divergence(ps, qs);
        } else {
            // Experimental variant: compare, source by source, how common each
            // source's items are in the respective merged sample.
            auto draws = simulate_draws(theta_n, theta_lambda, sizes, rng);
            std::vector<std::size_t> counts(theta_n, 0);
            for (const auto& source : draws)
                for (std::size_t idx : source) ++counts[idx];
            double per_source = 0.0;
            std::size_t compared = 0;
            for (std::size_t j = 0; j < sizes.size(); ++j) {
                if (obs_by_source[j].empty() || draws[j].empty()) continue;
                std::vector<double> p_counts, q_counts;
                for (std::size_t e : obs_by_source[j])
                    p_counts.push_back(static_cast<double>(sample.multiplicities()[e]));
                for (std::size_t i : draws[j])
                    q_counts.push_back(static_cast<double>(counts[i]));
                per_source += smoothed_kl(std::move(p_counts), std::move(q_counts),
                                          config.smoothing_mass);
                ++compared;
            }
            total += compared > 0 ? per_source / static_cast<double>(compared) : 0.0;
        }
    }
    return total / static_cast<double>(config.nb_runs);
}

MCResult mc_estimate_n(const IntegratedSample& sample, const MCConfig& config) {
    FrequencyStatistics fs = frequency_statistics(sample);
    const double c = static_cast<double>(fs.c);
    const double n_chao = chao92(fs); // throws when undefined; bounds the grid

    MCResult result;
    if (n_chao - c < 1e-9) { // degenerate grid
        result.n_hat = c;
        result.lambda_hat = 0.0;
        result.fitted_minimum = {c, 0.0, 0.0};
        return result;
    }

    const double step =
        std::max((n_chao - c) / static_cast<double>(std::max<std::size_t>(config.n_grid_steps, 1)),
                 1.0);
    std::vector<std::size_t> thetas;
    for (double t = c; t < n_chao + step / 2.0; t += step) {
        auto theta = static_cast<std::size_t>(std::llround(std::min(t, n_chao)));
        if (thetas.empty() || thetas.back() != theta) thetas.push_back(theta);
    }

    if (config.lambda_grid.empty()) throw InvalidConfig("lambda grid must be non-empty");
    const auto [lambda_lo_it, lambda_hi_it] =
        std::minmax_element(config.lambda_grid.begin(), config.lambda_grid.end());

    result.surface.reserve(thetas.size() * config.lambda_grid.size());
    for (std::size_t theta : thetas)
        for (double lambda : config.lambda_grid)
            result.surface.push_back(
                {static_cast<double>(theta), lambda, mc_distance(theta, lambda, sample, config)});

    double n_hat, lambda_hat, min_value;
    if (auto fitted = fit_quadratic_minimum(result.surface)) {
        n_hat = fitted->theta_n;
        lambda_hat = fitted->theta_lambda;
        min_value = fitted->value;
        result.used_surface_fit = true;
    } else {
        // raw grid argmin; first strict minimum wins, so ties resolve to the
        // smallest theta_N then the smallest lambda
        const MCGridPoint* best = &result.surface.front();
        for (const auto& pt : result.surface)
            if (pt.divergence < best->divergence) best = &pt;
        n_hat = best->theta_n;
        lambda_hat = best->theta_lambda;
        min_value = best->divergence;
    }

    result.n_hat = std::clamp(n_hat, c, n_chao);
    result.lambda_hat = std::clamp(lambda_hat, *lambda_lo_it, *lambda_hi_it);
    result.fitted_minimum = {result.n_hat, result.lambda_hat, min_value};
    return result;
}

EstimateReport mc_sum_estimate(const IntegratedSample& sample, const MCConfig& config,
                               double trust_threshold) {
    if (sample.empty()) throw EmptySample("cannot estimate over an empty sample");

    EstimateReport report;
    report.phi_obs = sum_observed(sample);

    FrequencyStatistics fs = frequency_statistics(sample);
    report.coverage = sample_coverage(fs);
    report.n_hat = static_cast<double>(fs.c);
    if (fs.all_singletons()) {
        report.divergent = true;
        report.phi_hat = report.phi_obs;
        return report;
    }
    if (fs.n >= 2) report.gamma_sq = cv_squared(fs);

    MCResult mc = mc_estimate_n(sample, config);
    report.n_hat = mc.n_hat;
    report.delta = report.phi_obs / static_cast<double>(fs.c) *
                   (mc.n_hat - static_cast<double>(fs.c));
    report.phi_hat = report.phi_obs + report.delta;
    report.trust = report.coverage >= trust_threshold;
    return report;
}

} // namespace uu
