// Command-line front end for the market analytics library. Every subcommand
// is deterministic given its input files, flags, and seed; data goes to
// files (--out) or standard output, messages go to standard error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mkt/benchmark.hpp"
#include "mkt/cluster.hpp"
#include "mkt/correlation.hpp"
#include "mkt/errors.hpp"
#include "mkt/markov.hpp"
#include "mkt/panel.hpp"
#include "mkt/sde.hpp"
#include "mkt/trend.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string input;
    std::string out_dir;
    std::string format;
    std::optional<std::pair<int, int>> period;

    // Noise augmentation (opt-in for correlate/cluster).
    bool augment = false;
    double delta = 0.05;
    std::size_t replicas = 10;
    std::uint64_t seed = 0;

    double lambda = 1.0;
    int k = 3;
    double decline_threshold = -0.02;
    double growth_threshold = 0.02;
    double smoothing = 0.0;
    bool verbose = false;
};

std::pair<int, int> parse_int_range(const std::string& text, const char* what) {
    const auto pos = text.find(':');
    if (pos == std::string::npos)
        throw mkt::InputError(std::string(what) + " must look like <start>:<end>, got '" +
                              text + "'");
    try {
        return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 1))};
    } catch (const std::exception&) {
        throw mkt::InputError(std::string(what) + " must contain integers, got '" + text + "'");
    }
}

std::pair<double, double> parse_double_range(const std::string& text, const char* what) {
    const auto pos = text.find(':');
    if (pos == std::string::npos)
        throw mkt::InputError(std::string(what) + " must look like <lo>:<hi>, got '" + text +
                              "'");
    try {
        return {std::stod(text.substr(0, pos)), std::stod(text.substr(pos + 1))};
    } catch (const std::exception&) {
        throw mkt::InputError(std::string(what) + " must contain numbers, got '" + text + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mkt::InputError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

mkt::RevenuePanel load_input(const CommonOpts& opts) {
    mkt::RevenuePanel panel = mkt::load_panel_file(opts.input);
    if (opts.period) panel = mkt::slice_period(panel, opts.period->first, opts.period->second);
    return panel;
}

mkt::NormalizedPanel normalized_input(const CommonOpts& opts) {
    mkt::NormalizedPanel norm = mkt::normalize(load_input(opts));
    if (opts.augment)
        norm = mkt::augment(norm, {opts.delta, opts.seed, opts.replicas});
    return norm;
}

// Artifact set of one subcommand: file name -> bytes. The pipeline emits
// the union of the per-subcommand sets, so bytes match by construction.
using Artifacts = std::vector<std::pair<std::string, std::string>>;

Artifacts run_describe(const CommonOpts& opts) {
    return {{"summary.json", mkt::to_json(mkt::summarize(load_input(opts)))}};
}

Artifacts run_correlate(const CommonOpts& opts) {
    const auto corr = mkt::pearson_matrix(normalized_input(opts));
    return {{"correlation.csv", mkt::to_csv(corr)},
            {"heatmap.svg", mkt::heatmap_svg(corr)}};
}

Artifacts run_cluster(const CommonOpts& opts) {
    const auto corr = mkt::pearson_matrix(normalized_input(opts));
    const auto assignment = mkt::cluster(mkt::correlation_distance(corr), opts.k);
    return {{"cluster.json", mkt::to_json(assignment)}};
}

Artifacts run_trend(const CommonOpts& opts) {
    const auto panel = load_input(opts);
    const mkt::RidgeSpec spec{opts.lambda, false};
    const auto shared = mkt::shared_trend(panel, spec);
    const auto companies = mkt::company_trends(panel, spec);
    return {{"trend.json", mkt::trend_report_json(shared, companies)},
            {"trend.svg", mkt::trend_chart_svg(panel, shared, companies)}};
}

Artifacts run_markov(const CommonOpts& opts) {
    const auto panel = load_input(opts);
    const mkt::DiscretizationSpec disc{opts.decline_threshold, opts.growth_threshold};
    const auto profiles = mkt::risk_profiles(panel, disc, opts.smoothing);
    return {{"risk.json", mkt::risk_report_json(profiles, opts.verbose)},
            {"risk_bars.svg", mkt::stacked_bar_svg(profiles)}};
}

// The five benchmark products shipped with the toolkit; used when no
// profiles file is given.
std::vector<mkt::BenchmarkProfile> builtin_crane_profiles(
    std::span<const mkt::DimensionScale> scales) {
    struct Row {
        const char* product;
        const char* labels[5];
    };
    static const Row rows[] = {
        {"Crane A", {"High", "Excellent", "Versatile", "Relatively Easy", "Advanced"}},
        {"Crane B", {"Moderate to High", "Good", "Highly Versatile", "Easy", "Highly Advanced"}},
        {"Crane C", {"Moderate", "Very Good", "Limited", "Very Easy", "Moderate"}},
        {"Crane D", {"High", "Very Good", "Highly Versatile", "Relatively Easy", "Highly Advanced"}},
        {"Crane E", {"Moderate to High", "Excellent", "Versatile", "Easy", "Highly Advanced"}},
    };
    std::vector<mkt::BenchmarkProfile> out;
    for (const auto& row : rows) {
        std::vector<std::string> labels(row.labels, row.labels + 5);
        out.push_back(mkt::score_product(row.product, labels, scales));
    }
    return out;
}

Artifacts run_radar(const std::string& profiles_path, const std::string& scales_path) {
    std::vector<mkt::DimensionScale> scales = scales_path.empty()
                                                  ? mkt::default_scales()
                                                  : mkt::load_scales_json(read_file(scales_path));
    std::vector<mkt::BenchmarkProfile> profiles =
        profiles_path.empty() ? builtin_crane_profiles(scales)
                              : mkt::load_profiles_json(read_file(profiles_path), scales);
    return {{"radar.svg", mkt::radar_svg(profiles, scales)},
            {"radar_comparison.json", mkt::to_json(mkt::compare(profiles))}};
}

// Demo three-factor system matching data/sde_system.json; used when no
// system file is given.
mkt::SdeSystem builtin_system() {
    mkt::SdeSystem system;
    system.factor_names = {"market_share", "pricing", "technology"};
    system.alpha = {0.04, 0.01, 0.05};
    system.beta = {{0.0, 0.02, 0.03}, {0.01, 0.0, -0.02}, {0.0, 0.01, 0.0}};
    system.sigma = {0.08, 0.05, 0.1};
    system.corr = {{1.0, 0.3, 0.2}, {0.3, 1.0, 0.25}, {0.2, 0.25, 1.0}};
    system.x0 = {1.0, 1.0, 1.0};
    return system;
}

struct SimulateOpts {
    std::string system_path;
    std::string estimate_from;
    double horizon = 5.0;
    int steps = 100;
    int paths = 2000;
    std::uint64_t seed = 0;
    bool dump_paths = false;
};

Artifacts run_simulate(const SimulateOpts& opts) {
    mkt::SdeSystem system;
    if (!opts.estimate_from.empty()) {
        std::vector<std::string> warnings;
        system = mkt::estimate_parameters(mkt::load_panel_file(opts.estimate_from), &warnings);
        for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    } else if (!opts.system_path.empty()) {
        system = mkt::load_system_json(read_file(opts.system_path));
    } else {
        system = builtin_system();
    }
    const mkt::SimulationSpec spec{opts.horizon, opts.steps, opts.paths, opts.seed};
    const auto report = mkt::euler_maruyama(system, spec, opts.dump_paths);
    Artifacts artifacts{{"ensemble.json", mkt::to_json(report)}};
    if (opts.dump_paths)
        artifacts.emplace_back("paths.csv", mkt::paths_csv(report, system, spec));
    return artifacts;
}

void emit(const Artifacts& artifacts, const std::string& out_dir,
          const std::string& format) {
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        for (const auto& [name, bytes] : artifacts) {
            const fs::path path = fs::path(out_dir) / name;
            std::ofstream out(path, std::ios::binary);
            if (!out) throw mkt::InputError("cannot write output file '" + path.string() + "'");
            out << bytes;
            std::cerr << "wrote " << path.string() << "\n";
        }
        return;
    }
    // No output directory: print the artifact matching the requested (or
    // default) format to standard output.
    const std::string want = format;
    for (const auto& [name, bytes] : artifacts) {
        const auto dot = name.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : name.substr(dot + 1);
        if (want.empty() || ext == want) {
            std::cout << bytes;
            return;
        }
    }
    throw mkt::InputError("no artifact with format '" + want + "' for this subcommand");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Competitive market analytics: revenue panels, correlation and "
                 "clustering, trend decomposition, growth-state chains, benchmark "
                 "radar charts, and factor simulation"};
    app.require_subcommand(1);

    CommonOpts opts;
    SimulateOpts sim;
    std::string period_text, thresholds_text;
    std::string radar_profiles, radar_scales;

    auto add_panel_options = [&](CLI::App* cmd, bool with_noise) {
        cmd->add_option("input", opts.input, "Revenue panel CSV")->required();
        cmd->add_option("--period", period_text, "Slice to <start>:<end> years");
        cmd->add_option("--out", opts.out_dir, "Write artifacts into this directory");
        cmd->add_option("--format", opts.format, "Artifact for stdout (csv|json|svg)");
        if (with_noise) {
            cmd->add_flag("--augment", opts.augment,
                          "Apply noise augmentation before the analysis");
            cmd->add_option("--delta", opts.delta, "Noise stddev on z-scores");
            cmd->add_option("--replicas", opts.replicas, "Noisy copies per company");
            cmd->add_option("--seed", opts.seed, "Noise seed");
        }
    };

    auto* describe = app.add_subcommand("describe", "Per-company summary statistics");
    add_panel_options(describe, false);

    auto* correlate = app.add_subcommand("correlate", "Correlation matrix and heatmap");
    add_panel_options(correlate, true);

    auto* cluster_cmd = app.add_subcommand("cluster", "Cluster companies by revenue movement");
    add_panel_options(cluster_cmd, true);
    cluster_cmd->add_option("--k", opts.k, "Number of clusters");

    auto* trend = app.add_subcommand("trend", "Shared and per-company ridge trends");
    add_panel_options(trend, false);
    trend->add_option("--lambda", opts.lambda, "Ridge regularization strength");

    auto* markov = app.add_subcommand("markov", "Growth-state chains and risk profiles");
    add_panel_options(markov, false);
    markov->add_option("--thresholds", thresholds_text,
                       "Growth state thresholds <decline>:<growth>");
    markov->add_option("--smoothing", opts.smoothing, "Laplace pseudo-count");
    markov->add_flag("--verbose", opts.verbose, "Include transition matrices in the report");

    auto* radar = app.add_subcommand("radar", "Benchmark radar chart and comparison");
    radar->add_option("profiles", radar_profiles, "Profiles JSON (default: built-in cranes)");
    radar->add_option("--scales", radar_scales, "Custom label scales JSON");
    radar->add_option("--out", opts.out_dir, "Write artifacts into this directory");
    radar->add_option("--format", opts.format, "Artifact for stdout (json|svg)");

    auto* simulate = app.add_subcommand("simulate", "Correlated factor simulation");
    simulate->add_option("system", sim.system_path, "System JSON (default: built-in demo)");
    simulate->add_option("--estimate-from", sim.estimate_from,
                         "Estimate the system from a revenue panel CSV");
    simulate->add_option("--horizon", sim.horizon, "Years to simulate");
    simulate->add_option("--steps", sim.steps, "Steps per path");
    simulate->add_option("--paths", sim.paths, "Number of paths");
    simulate->add_option("--seed", sim.seed, "Simulation seed");
    simulate->add_flag("--dump-paths", sim.dump_paths, "Also write per-path CSV");
    simulate->add_option("--out", opts.out_dir, "Write artifacts into this directory");
    simulate->add_option("--format", opts.format, "Artifact for stdout (json|csv)");

    auto* pipeline = app.add_subcommand("pipeline", "All analyses into one directory");
    add_panel_options(pipeline, true);
    pipeline->add_option("--k", opts.k, "Number of clusters");
    pipeline->add_option("--lambda", opts.lambda, "Ridge regularization strength");
    pipeline->add_option("--thresholds", thresholds_text,
                         "Growth state thresholds <decline>:<growth>");
    pipeline->add_option("--smoothing", opts.smoothing, "Laplace pseudo-count");
    pipeline->add_flag("--verbose", opts.verbose, "Include transition matrices in the report");
    pipeline->add_option("--horizon", sim.horizon, "Simulation years");
    pipeline->add_option("--steps", sim.steps, "Simulation steps per path");
    pipeline->add_option("--paths", sim.paths, "Simulation paths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!period_text.empty()) opts.period = parse_int_range(period_text, "--period");
        if (!thresholds_text.empty()) {
            const auto [lo, hi] = parse_double_range(thresholds_text, "--thresholds");
            opts.decline_threshold = lo;
            opts.growth_threshold = hi;
            if (!(lo < hi))
                throw mkt::InputError("--thresholds: decline bound must be below growth bound");
        }
        sim.seed = opts.seed;

        if (describe->parsed()) {
            if (opts.format.empty()) opts.format = "json";
            emit(run_describe(opts), opts.out_dir, opts.format);
        } else if (correlate->parsed()) {
            if (opts.format.empty()) opts.format = "csv";
            emit(run_correlate(opts), opts.out_dir, opts.format);
        } else if (cluster_cmd->parsed()) {
            if (opts.format.empty()) opts.format = "json";
            emit(run_cluster(opts), opts.out_dir, opts.format);
        } else if (trend->parsed()) {
            if (opts.format.empty()) opts.format = "json";
            emit(run_trend(opts), opts.out_dir, opts.format);
        } else if (markov->parsed()) {
            if (opts.format.empty()) opts.format = "json";
            emit(run_markov(opts), opts.out_dir, opts.format);
        } else if (radar->parsed()) {
            if (opts.format.empty()) opts.format = "svg";
            emit(run_radar(radar_profiles, radar_scales), opts.out_dir, opts.format);
        } else if (simulate->parsed()) {
            if (opts.format.empty()) opts.format = "json";
            emit(run_simulate(sim), opts.out_dir, opts.format);
        } else if (pipeline->parsed()) {
            if (opts.out_dir.empty()) opts.out_dir = "out";
            Artifacts all;
            for (auto& a : run_describe(opts)) all.push_back(std::move(a));
            for (auto& a : run_correlate(opts)) all.push_back(std::move(a));
            for (auto& a : run_cluster(opts)) all.push_back(std::move(a));
            for (auto& a : run_trend(opts)) all.push_back(std::move(a));
            for (auto& a : run_markov(opts)) all.push_back(std::move(a));
            for (auto& a : run_radar("", "")) all.push_back(std::move(a));
            for (auto& a : run_simulate(sim)) all.push_back(std::move(a));
            emit(all, opts.out_dir, "");
        }
    } catch (const mkt::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mkt::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
