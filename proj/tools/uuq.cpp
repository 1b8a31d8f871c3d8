// uuq: estimate the impact of unobserved records on aggregate query results
// over a multi-source integrated sample, simulate such samples, and run
// experiment sweeps that emit plot-ready CSV series.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uu/aggregates.hpp"
#include "uu/bounds.hpp"
#include "uu/bucketing.hpp"
#include "uu/csv.hpp"
#include "uu/errors.hpp"
#include "uu/estimators.hpp"
#include "uu/montecarlo.hpp"
#include "uu/parallel.hpp"
#include "uu/report.hpp"
#include "uu/simulator.hpp"

namespace {

struct SeedChoice {
    std::uint64_t value = 0;
    bool explicit_seed = false;
};

// --seed flag, then UU_SEED, then a random one (echoed in metadata so the run
// can be reproduced).
SeedChoice resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return {*flag, true};
    if (const char* env = std::getenv("UU_SEED")) {
        try {
            return {std::stoull(env), true};
        } catch (const std::exception&) {
            throw uu::InvalidConfig("UU_SEED is not a valid integer seed");
        }
    }
    std::random_device rd;
    return {(static_cast<std::uint64_t>(rd()) << 32) ^ rd(), false};
}

struct EstimateArgs {
    std::string input;
    std::string aggregate = "sum";
    std::string estimator = "naive";
    bool with_bound = false;
    double trust_threshold = uu::kDefaultTrustThreshold;
    double epsilon = 0.01;
    double z = 3.0;
    std::optional<std::uint64_t> seed;
    uu::MCConfig mc;
    bool human = false;
};

void print_human_summary(const nlohmann::json& doc) {
    const auto& body = doc["report"];
    std::cerr << "aggregate : " << doc["query"]["aggregate"].get<std::string>() << "\n"
              << "estimator : " << doc["estimator"].get<std::string>() << "\n";
    if (body.contains("phi_obs")) {
        std::cerr << "observed  : " << body["phi_obs"].get<double>() << "\n"
                  << "delta     : " << body["delta"].get<double>() << "\n"
                  << "estimate  : " << body["phi_hat"].get<double>() << "\n"
                  << "n_hat     : " << body["n_hat"].get<double>() << "\n"
                  << "coverage  : " << body["coverage"].get<double>()
                  << (body["trust"].get<bool>() ? " (trusted)" : " (below trust threshold)")
                  << "\n";
        if (body["divergent"].get<bool>())
            std::cerr << "note      : all-singleton sample, estimate diverges\n";
    } else {
        std::cerr << "observed  : " << body["observed_extreme"].get<double>() << "\n"
                  << "reported  : " << (body["reported"].get<bool>() ? "yes" : "no") << "\n";
    }
    if (!doc["bound"].is_null())
        std::cerr << "bound     : " << doc["bound"].get<double>() << "\n";
    else if (doc["metadata"]["config"].value("bound", false))
        std::cerr << "bound     : no finite bound\n";
}

int run_estimate(const EstimateArgs& args) {
    const uu::IntegratedSample sample = uu::ingest_csv_file(args.input);
    const SeedChoice seed = resolve_seed(args.seed);
    uu::MCConfig mc = args.mc;
    mc.seed = seed.value;

    std::optional<double> bound;
    if (args.with_bound)
        bound = uu::delta_upper_bound(sample, {args.epsilon, args.z});

    uu::ReportMeta meta;
    meta.n = sample.n();
    meta.c = sample.unique_count();
    if (sample.n() > 0) {
        const uu::FrequencyStatistics fs = uu::frequency_statistics(sample);
        meta.coverage = uu::sample_coverage(fs);
        if (fs.n >= 2 && !fs.all_singletons()) meta.gamma_sq = uu::cv_squared(fs);
    }
    meta.seed = seed.value;
    meta.config_echo = {{"input", args.input},
                        {"aggregate", args.aggregate},
                        {"estimator", args.estimator},
                        {"trust_threshold", args.trust_threshold},
                        {"bound", args.with_bound},
                        {"epsilon", args.epsilon},
                        {"z", args.z},
                        {"mc",
                         {{"nb_runs", mc.nb_runs},
                          {"n_grid_steps", mc.n_grid_steps},
                          {"smoothing_mass", mc.smoothing_mass}}},
                        {"seed_explicit", seed.explicit_seed}};

    nlohmann::json doc;
    if (args.aggregate == "sum") {
        auto kind = uu::EstimatorKind::parse(args.estimator);
        if (!kind) throw uu::InvalidConfig("unknown estimator '" + args.estimator + "'");
        uu::EstimateReport report =
            uu::estimate_sum(sample, *kind, args.trust_threshold, &mc);
        report.upper_bound = bound;
        doc = uu::make_report_document("sum", kind->name(), report, bound, meta);
    } else if (args.aggregate == "count") {
        uu::CountEstimator kind;
        if (args.estimator == "mc" || args.estimator == "monte-carlo")
            kind = uu::CountEstimator::monte_carlo;
        else if (args.estimator == "chao92" || args.estimator == "naive")
            kind = uu::CountEstimator::chao92;
        else
            throw uu::InvalidConfig("count estimator must be 'chao92' or 'mc'");
        const uu::EstimateReport report =
            uu::estimate_count(sample, kind, args.trust_threshold, &mc);
        doc = uu::make_report_document(
            "count", kind == uu::CountEstimator::chao92 ? "chao92" : "mc", report, bound, meta);
    } else if (args.aggregate == "avg") {
        const uu::EstimateReport report = uu::estimate_avg(sample, args.trust_threshold);
        doc = uu::make_report_document("avg", "bucket", report, bound, meta);
    } else if (args.aggregate == "min" || args.aggregate == "max") {
        const uu::ExtremeReport report = uu::estimate_extreme(
            sample, args.aggregate == "max" ? uu::Extreme::max : uu::Extreme::min);
        doc = uu::make_extreme_document(report, bound, meta);
    } else {
        throw uu::InvalidConfig("unknown aggregate '" + args.aggregate + "'");
    }

    std::cout << doc.dump(2) << "\n";
    if (args.human) print_human_summary(doc);
    if (!seed.explicit_seed)
        std::cerr << "note: no --seed given; auto seed " << seed.value
                  << " recorded in metadata\n";
    return 0;
}

struct SimArgs {
    uu::SimConfig config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> streaker_at;
    std::optional<std::size_t> streaker_size;
    std::string arrival = "round-robin";
};

uu::SimConfig finalize_sim_config(SimArgs& args) {
    if (args.streaker_at || args.streaker_size) {
        if (!args.streaker_at || !args.streaker_size)
            throw uu::InvalidConfig("--streaker-at and --streaker-size go together");
        args.config.streaker = uu::StreakerSpec{*args.streaker_at, *args.streaker_size};
    }
    if (args.arrival == "round-robin")
        args.config.arrival = uu::Arrival::round_robin;
    else if (args.arrival == "sequential")
        args.config.arrival = uu::Arrival::sequential;
    else
        throw uu::InvalidConfig("--arrival must be 'round-robin' or 'sequential'");
    return args.config;
}

int run_simulate(SimArgs& args) {
    const SeedChoice seed = resolve_seed(args.seed);
    uu::SimConfig config = finalize_sim_config(args);
    config.seed = seed.value;
    const uu::IntegratedSample sample = uu::simulate_sample(config);
    uu::write_csv(std::cout, sample);
    if (!seed.explicit_seed) std::cerr << "note: no --seed given; auto seed " << seed.value << "\n";
    return 0;
}

struct SweepArgs {
    SimArgs sim;
    std::vector<std::size_t> sources_grid;
    std::vector<std::size_t> source_size_grid;
    std::vector<double> lambda_grid;
    std::vector<double> rho_grid;
    std::string estimators = "naive,freq,bucket,mc";
    std::string aggregate = "sum";
    std::size_t replications = 50;
    std::size_t stride = 10;
    std::string output = "-";
    uu::MCConfig mc;
};

std::vector<uu::EstimatorKind> parse_estimators(const std::string& list) {
    std::vector<uu::EstimatorKind> kinds;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string name =
            list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!name.empty()) {
            auto kind = uu::EstimatorKind::parse(name);
            if (!kind) throw uu::InvalidConfig("unknown estimator '" + name + "'");
            kinds.push_back(*kind);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (kinds.empty()) throw uu::InvalidConfig("no estimators selected");
    return kinds;
}

// min/max sweep: reporting rate and precision instead of phi series
void write_extreme_sweep(std::ostream& out, const uu::SimConfig& config, uu::Extreme which,
                         std::size_t replications, std::size_t stride) {
    const uu::GroundTruth reference = uu::make_ground_truth(config);
    const double truth =
        which == uu::Extreme::max ? reference.true_max() : reference.true_min();

    std::vector<std::size_t> steps;
    const auto sizes = config.resolved_source_sizes();
    std::size_t total = 0;
    for (std::size_t s : sizes) total += s;
    if (config.streaker) total += config.streaker->size;
    for (std::size_t s = stride; s < total; s += stride) steps.push_back(s);
    steps.push_back(total);

    std::vector<std::vector<std::optional<double>>> reported(
        replications, std::vector<std::optional<double>>(steps.size()));
    uu::parallel_for(replications, [&](std::size_t rep) {
        uu::SimConfig rep_config = config;
        rep_config.seed = uu::mix_seed(config.seed, {0x7265706cULL, rep});
        const uu::IntegratedSample full = uu::simulate_sample(rep_config);
        for (std::size_t si = 0; si < steps.size(); ++si) {
            const uu::IntegratedSample prefix = uu::prefix_sample(full, steps[si]);
            if (prefix.empty()) continue;
            const uu::ExtremeReport r = uu::estimate_extreme(prefix, which);
            if (r.reported) reported[rep][si] = *r.value;
        }
    });

    out << "n,aggregate,report_rate,reported_mean,true_extreme,exact_rate\n";
    for (std::size_t si = 0; si < steps.size(); ++si) {
        std::size_t reports = 0, exact = 0;
        double sum = 0.0;
        for (std::size_t rep = 0; rep < replications; ++rep) {
            if (!reported[rep][si]) continue;
            ++reports;
            sum += *reported[rep][si];
            if (*reported[rep][si] == truth) ++exact;
        }
        const double rate = static_cast<double>(reports) / static_cast<double>(replications);
        out << steps[si] << ',' << (which == uu::Extreme::max ? "max" : "min") << ','
            << uu::format_double(rate) << ','
            << (reports ? uu::format_double(sum / static_cast<double>(reports)) : "") << ','
            << uu::format_double(truth) << ','
            << (reports ? uu::format_double(static_cast<double>(exact) /
                                            static_cast<double>(reports))
                        : "")
            << '\n';
    }
}

int run_sweep(SweepArgs& args) {
    const SeedChoice seed = resolve_seed(args.sim.seed);
    uu::SimConfig base = finalize_sim_config(args.sim);
    base.seed = seed.value;

    if (args.sources_grid.empty()) args.sources_grid = {base.num_sources};
    if (args.source_size_grid.empty()) args.source_size_grid = {base.source_size};
    if (args.lambda_grid.empty()) args.lambda_grid = {base.lambda};
    if (args.rho_grid.empty()) args.rho_grid = {base.rho};
    if (args.source_size_grid.size() == 1)
        args.source_size_grid.assign(args.sources_grid.size(), args.source_size_grid[0]);
    if (args.rho_grid.size() == 1) args.rho_grid.assign(args.lambda_grid.size(), args.rho_grid[0]);
    if (args.source_size_grid.size() != args.sources_grid.size())
        throw uu::InvalidConfig("--source-size list must pair up with --sources list");
    if (args.rho_grid.size() != args.lambda_grid.size())
        throw uu::InvalidConfig("--rho list must pair up with --lambda list");

    const auto kinds = parse_estimators(args.estimators);
    const std::size_t points = args.sources_grid.size() * args.lambda_grid.size();

    for (std::size_t wi = 0; wi < args.sources_grid.size(); ++wi) {
        for (std::size_t li = 0; li < args.lambda_grid.size(); ++li) {
            uu::SimConfig config = base;
            config.num_sources = args.sources_grid[wi];
            config.source_size = args.source_size_grid[wi];
            config.source_sizes.clear();
            config.lambda = args.lambda_grid[li];
            config.rho = args.rho_grid[li];

            std::ostream* out = &std::cout;
            std::ofstream file;
            std::string name;
            if (args.output != "-") {
                name = args.output;
                if (points > 1)
                    name += "w" + std::to_string(config.num_sources) + "_lambda" +
                            uu::format_double(config.lambda) + "_rho" +
                            uu::format_double(config.rho) + ".csv";
                file.open(name);
                if (!file) throw uu::Error("cannot write '" + name + "'");
                out = &file;
            } else if (points > 1) {
                throw uu::InvalidConfig("grid sweeps need --output as a file prefix");
            }

            if (args.aggregate == "max" || args.aggregate == "min") {
                write_extreme_sweep(*out, config,
                                    args.aggregate == "max" ? uu::Extreme::max : uu::Extreme::min,
                                    args.replications, args.stride);
            } else if (args.aggregate == "sum") {
                uu::MCConfig mc = args.mc;
                mc.seed = seed.value;
                const auto rows =
                    uu::run_experiment(config, kinds, args.replications, args.stride, mc);
                *out << "n,estimator,phi_mean,phi_std,phi_true\n";
                for (const auto& row : rows)
                    *out << row.n << ',' << row.estimator << ','
                         << uu::format_double(row.phi_mean) << ','
                         << uu::format_double(row.phi_std) << ','
                         << uu::format_double(row.phi_true) << '\n';
            } else {
                throw uu::InvalidConfig("sweep aggregate must be 'sum', 'min' or 'max'");
            }
            if (!name.empty()) std::cerr << "wrote " << name << "\n";
        }
    }
    if (!seed.explicit_seed) std::cerr << "note: no --seed given; auto seed " << seed.value << "\n";
    return 0;
}

void add_sim_flags(CLI::App* cmd, SimArgs& args) {
    cmd->add_option("--n-items", args.config.n_items, "population size N");
    cmd->add_option("--value-min", args.config.value_min, "smallest attribute value");
    cmd->add_option("--value-step", args.config.value_step, "attribute value spacing");
    cmd->add_option("--value-max", args.config.value_max, "largest attribute value");
    cmd->add_option("--lambda", args.config.lambda, "publicity skew");
    cmd->add_option("--rho", args.config.rho, "publicity-value correlation in [0,1]");
    cmd->add_option("--sources", args.config.num_sources, "number of sources w");
    cmd->add_option("--source-size", args.config.source_size, "observations per source n_j");
    cmd->add_option("--source-sizes", args.config.source_sizes, "explicit per-source sizes")
        ->delimiter(',');
    cmd->add_option("--streaker-at", args.streaker_at, "arrival position of the streaker block");
    cmd->add_option("--streaker-size", args.streaker_size, "items the streaker contributes");
    cmd->add_option("--arrival", args.arrival, "round-robin or sequential")
        ->check(CLI::IsMember({"round-robin", "sequential"}));
    cmd->add_option("--seed", args.seed, "RNG seed (UU_SEED env var as fallback)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unknown-unknowns impact estimation for aggregate queries"};
    app.require_subcommand(1);

    EstimateArgs est;
    CLI::App* estimate = app.add_subcommand("estimate", "estimate an aggregate over a CSV sample");
    estimate->add_option("--input", est.input, "CSV file: source_id,entity_id,value")
        ->required();
    estimate->add_option("--aggregate", est.aggregate, "sum, count, avg, min or max")
        ->check(CLI::IsMember({"sum", "count", "avg", "min", "max"}));
    estimate->add_option("--estimator", est.estimator,
                         "observed, naive, freq, freq-simple, bucket, bucket-freq, mc "
                         "(chao92 or mc for count)");
    estimate->add_flag("--bound", est.with_bound, "attach the worst-case upper bound");
    estimate->add_option("--trust-threshold", est.trust_threshold,
                         "coverage needed to mark the estimate trusted");
    estimate->add_option("--epsilon", est.epsilon, "bound confidence parameter");
    estimate->add_option("--z", est.z, "bound sigma multiplier");
    estimate->add_option("--seed", est.seed, "RNG seed for the Monte-Carlo estimator");
    estimate->add_option("--mc-runs", est.mc.nb_runs, "simulations per grid point");
    estimate->add_option("--mc-grid-steps", est.mc.n_grid_steps, "theta_N grid steps");
    estimate->add_option("--mc-smoothing", est.mc.smoothing_mass, "smoothing mass");
    estimate->add_flag("--human", est.human, "also print a human-readable summary to stderr");

    SimArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic sample as CSV");
    add_sim_flags(simulate, sim);

    SweepArgs sweep;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "replicated prefix-replay experiments over a config grid");
    add_sim_flags(sweep_cmd, sweep.sim);
    sweep_cmd->add_option("--sources-grid", sweep.sources_grid, "list of source counts w")
        ->delimiter(',');
    sweep_cmd
        ->add_option("--source-size-grid", sweep.source_size_grid,
                     "per-source sizes paired with --sources-grid")
        ->delimiter(',');
    sweep_cmd->add_option("--lambda-grid", sweep.lambda_grid, "list of publicity skews")
        ->delimiter(',');
    sweep_cmd->add_option("--rho-grid", sweep.rho_grid, "correlations paired with --lambda-grid")
        ->delimiter(',');
    sweep_cmd->add_option("--estimators", sweep.estimators, "comma-separated estimator names");
    sweep_cmd->add_option("--aggregate", sweep.aggregate, "sum, min or max");
    sweep_cmd->add_option("--replications", sweep.replications, "independent repetitions");
    sweep_cmd->add_option("--stride", sweep.stride, "prefix-replay step width");
    sweep_cmd->add_option("--output", sweep.output, "output file, prefix for grids, or - ");
    sweep_cmd->add_option("--mc-runs", sweep.mc.nb_runs, "simulations per grid point");
    sweep_cmd->add_option("--mc-grid-steps", sweep.mc.n_grid_steps, "theta_N grid steps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (estimate->parsed()) return run_estimate(est);
        if (simulate->parsed()) return run_simulate(sim);
        if (sweep_cmd->parsed()) return run_sweep(sweep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
