#ifndef MOWST_EXPERIMENT_HPP
#define MOWST_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mowst/engine.hpp"

namespace mowst::experiment {

enum class ProblemKind { SensorPlacement, Recommender };
enum class Algorithm { Nsga2, MoeaWst, Moead, RandomSearch };

const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

/// One experiment: a problem instance, one or more algorithms, shared
/// optimizer settings and seeded replications. Parsed from a JSON file.
struct ExperimentConfig {
    ProblemKind problem = ProblemKind::SensorPlacement;
    std::vector<Algorithm> algorithms;

    // sensor placement inputs
    std::string graph_path;
    std::string detection_matrix_path;
    std::vector<std::size_t> events;    // default: all nodes
    std::vector<std::size_t> locations; // default: all nodes
    std::optional<double> travel_time_per_edge;
    double t_max = 86400.0;
    std::size_t budget = 1;

    // recommender inputs
    std::string ratings_path;
    std::vector<std::size_t> users; // default: everyone
    std::size_t top_l = 1;

    moea::OptimizerConfig optimizer;          // reference_point left in natural units here
    std::vector<double> natural_reference;    // as written in the config
    std::size_t replications = 1;
    std::vector<std::uint64_t> seeds;
    std::size_t moead_neighborhood = 10;
    std::string output_dir = ".";
};

ExperimentConfig load_experiment_config(const std::string& path);

/// Builds the problem, runs every algorithm for every replication and
/// writes per-replication hv_history/pareto_front/pareto_set files, a
/// summary.csv per algorithm and a coverage.csv when two or more algorithms
/// are listed. All CSV bytes are determined by (config, seeds); wall-clock
/// timing goes to stderr only.
void run_experiment(const ExperimentConfig& config);
void run_experiment_file(const std::string& config_path);

struct AnalyzeOptions {
    std::string graph_path;
    std::string output_dir = ".";
    std::size_t clusters = 0; // 0 = skip clustering
    std::uint64_t seed = 0;
    // removal sets: outer = one report row each
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> removal_sets;
};

/// Emits centrality.csv, vulnerability.csv (with one row per removal set)
/// and edge_criticality.csv, plus clusters.csv when requested.
void analyze_graph(const AnalyzeOptions& options);

/// Table of distributional distances and efficiency loss per removal set.
std::string resilience_report(const std::string& graph_path,
                              const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& removal_sets);

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parse_removal_sets(const std::string& spec);

} // namespace mowst::experiment

#endif
