#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mowst/csv.hpp"
#include "mowst/error.hpp"
#include "mowst/experiment.hpp"
#include "mowst/histogram.hpp"
#include "mowst/ot.hpp"

namespace {

int exit_code_for(const mowst::Error& e) {
    switch (e.kind()) {
    case mowst::ErrorKind::ConfigError: return 2;
    default: return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mowst: multi-objective evolutionary optimization with Wasserstein-based selection"};
    app.require_subcommand(1);

    // optimize
    std::string config_path, out_override;
    long long seed_override = -1;
    auto* optimize = app.add_subcommand("optimize", "Run a configured experiment");
    optimize->add_option("--config", config_path, "JSON experiment config")->required();
    optimize->add_option("--out", out_override, "Override the config's output directory");
    optimize->add_option("--seed", seed_override, "Override the base seed (single-seed runs)");

    // analyze-graph
    mowst::experiment::AnalyzeOptions analyze;
    std::string remove_edges_spec;
    auto* analyze_cmd = app.add_subcommand("analyze-graph", "Centrality, vulnerability and edge criticality reports");
    analyze_cmd->add_option("graph", analyze.graph_path, "Edge-list CSV (u,v[,weight])")->required();
    analyze_cmd->add_option("--out", analyze.output_dir, "Output directory (default: .)");
    analyze_cmd->add_option("--clusters", analyze.clusters, "Also emit a spectral clustering with k clusters");
    analyze_cmd->add_option("--seed", analyze.seed, "Clustering seed");
    analyze_cmd->add_option("--remove-edges", remove_edges_spec,
                            "Removal sets, e.g. '0-1;2-3;0-1,2-3' (comma joins edges of one set)");

    // emd
    std::string hist_a, hist_b;
    double p_exp = 1.0;
    auto* emd_cmd = app.add_subcommand("emd", "Transport distance between two histogram CSV files");
    emd_cmd->add_option("first", hist_a, "Histogram CSV (coord_1,...,coord_d,weight)")->required();
    emd_cmd->add_option("second", hist_b, "Histogram CSV")->required();
    emd_cmd->add_option("--p-exp", p_exp, "Ground-distance exponent (default 1)");

    // resilience
    std::string res_graph, res_out, res_remove;
    auto* res_cmd = app.add_subcommand("resilience", "Distributional distances and efficiency loss under edge removals");
    res_cmd->add_option("graph", res_graph, "Edge-list CSV")->required();
    res_cmd->add_option("--remove-edges", res_remove, "Removal sets, e.g. '0-1;2-3'")->required();
    res_cmd->add_option("--out", res_out, "Write the report CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad usage is a configuration error
    }

    try {
        if (*optimize) {
            auto cfg = mowst::experiment::load_experiment_config(config_path);
            if (!out_override.empty()) cfg.output_dir = out_override;
            if (seed_override >= 0) {
                cfg.optimizer.seed = static_cast<std::uint64_t>(seed_override);
                cfg.seeds.clear();
                for (std::size_t r = 0; r < cfg.replications; ++r)
                    cfg.seeds.push_back(cfg.optimizer.seed + r);
            }
            mowst::experiment::run_experiment(cfg);
        } else if (*analyze_cmd) {
            if (!remove_edges_spec.empty())
                analyze.removal_sets = mowst::experiment::parse_removal_sets(remove_edges_spec);
            mowst::experiment::analyze_graph(analyze);
        } else if (*emd_cmd) {
            mowst::Histogram a = mowst::read_histogram_csv(hist_a);
            mowst::Histogram b = mowst::read_histogram_csv(hist_b);
            double d = mowst::ot::emd_lp(a, b, mowst::ot::GroundMetric::euclidean(p_exp)).cost;
            std::cout << mowst::csv::cell(d) << "\n";
        } else if (*res_cmd) {
            auto sets = mowst::experiment::parse_removal_sets(res_remove);
            std::string report = mowst::experiment::resilience_report(res_graph, sets);
            if (res_out.empty())
                std::cout << report;
            else
                mowst::csv::write_file(res_out, report);
        }
    } catch (const mowst::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
