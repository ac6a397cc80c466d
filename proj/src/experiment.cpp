#include "mowst/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "mowst/csv.hpp"
#include "mowst/error.hpp"
#include "mowst/graph.hpp"
#include "mowst/recsys.hpp"
#include "mowst/wdn.hpp"

namespace mowst::experiment {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(Algorithm a) {
    switch (a) {
    case Algorithm::Nsga2: return "nsga2";
    case Algorithm::MoeaWst: return "moea_wst";
    case Algorithm::Moead: return "moead";
    case Algorithm::RandomSearch: return "random";
    }
    return "?";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "nsga2") return Algorithm::Nsga2;
    if (name == "moea_wst") return Algorithm::MoeaWst;
    if (name == "moead") return Algorithm::Moead;
    if (name == "random") return Algorithm::RandomSearch;
    throw Error(ErrorKind::ConfigError, "unknown algorithm '" + name + "'");
}

namespace {

const std::set<std::string> kKnownKeys = {
    "problem",      "algorithm",     "algorithms",      "graph",
    "detection_matrix", "events",    "locations",       "travel_time_per_edge",
    "t_max",        "budget",        "ratings",         "users",
    "top_l",        "population_size", "offspring_per_generation", "generations",
    "mutation_probability", "sbx_eta", "reference_point", "seed",
    "seeds",        "replications",  "moead_neighborhood", "output_dir",
};

void require_file(const std::string& path, const std::string& field) {
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorKind::ConfigError, field + " file does not exist: " + path);
}

std::vector<std::size_t> index_list(const json& j, const std::string& field) {
    std::vector<std::size_t> out;
    for (const auto& v : j) {
        long long x = v.get<long long>();
        if (x < 0) throw Error(ErrorKind::ConfigError, field + " holds a negative id");
        out.push_back(static_cast<std::size_t>(x));
    }
    return out;
}

} // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "config file does not exist: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("config parse failure: ") + e.what());
    }

    for (const auto& [key, _] : j.items())
        if (!kKnownKeys.count(key))
            throw Error(ErrorKind::ConfigError, "unknown config key '" + key + "'");

    ExperimentConfig cfg;
    try {
        std::string prob = j.at("problem").get<std::string>();
        if (prob == "sensor_placement")
            cfg.problem = ProblemKind::SensorPlacement;
        else if (prob == "recommender")
            cfg.problem = ProblemKind::Recommender;
        else
            throw Error(ErrorKind::ConfigError, "problem must be sensor_placement or recommender");

        if (j.contains("algorithms"))
            for (const auto& a : j["algorithms"])
                cfg.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
        if (j.contains("algorithm"))
            cfg.algorithms.push_back(algorithm_from_string(j["algorithm"].get<std::string>()));
        if (cfg.algorithms.empty())
            throw Error(ErrorKind::ConfigError, "no algorithm listed");

        if (j.contains("graph")) cfg.graph_path = j["graph"].get<std::string>();
        if (j.contains("detection_matrix"))
            cfg.detection_matrix_path = j["detection_matrix"].get<std::string>();
        if (j.contains("events")) cfg.events = index_list(j["events"], "events");
        if (j.contains("locations")) cfg.locations = index_list(j["locations"], "locations");
        if (j.contains("travel_time_per_edge"))
            cfg.travel_time_per_edge = j["travel_time_per_edge"].get<double>();
        if (j.contains("t_max")) cfg.t_max = j["t_max"].get<double>();
        if (j.contains("budget")) cfg.budget = j["budget"].get<std::size_t>();
        if (j.contains("ratings")) cfg.ratings_path = j["ratings"].get<std::string>();
        if (j.contains("users")) cfg.users = index_list(j["users"], "users");
        if (j.contains("top_l")) cfg.top_l = j["top_l"].get<std::size_t>();

        auto& opt = cfg.optimizer;
        if (j.contains("population_size")) opt.population_size = j["population_size"].get<std::size_t>();
        if (j.contains("offspring_per_generation"))
            opt.offspring_per_generation = j["offspring_per_generation"].get<std::size_t>();
        if (j.contains("generations")) opt.generations = j["generations"].get<std::size_t>();
        if (j.contains("mutation_probability"))
            opt.mutation_probability = j["mutation_probability"].get<double>();
        if (j.contains("sbx_eta")) opt.sbx_eta = j["sbx_eta"].get<double>();
        if (j.contains("seed")) opt.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("reference_point"))
            for (const auto& v : j["reference_point"]) cfg.natural_reference.push_back(v.get<double>());
        if (j.contains("replications")) cfg.replications = j["replications"].get<std::size_t>();
        if (j.contains("seeds"))
            for (const auto& v : j["seeds"]) cfg.seeds.push_back(v.get<std::uint64_t>());
        if (j.contains("moead_neighborhood"))
            cfg.moead_neighborhood = j["moead_neighborhood"].get<std::size_t>();
        if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("config field error: ") + e.what());
    }

    if (cfg.replications == 0) throw Error(ErrorKind::ConfigError, "replications must be >= 1");
    if (cfg.optimizer.population_size == 0)
        throw Error(ErrorKind::ConfigError, "population_size must be >= 1");
    if (cfg.optimizer.offspring_per_generation == 0)
        throw Error(ErrorKind::ConfigError, "offspring_per_generation must be >= 1");
    if (cfg.optimizer.mutation_probability < 0.0 || cfg.optimizer.mutation_probability > 1.0)
        throw Error(ErrorKind::ConfigError, "mutation_probability must be in [0, 1]");
    if (!cfg.seeds.empty() && cfg.seeds.size() != cfg.replications)
        throw Error(ErrorKind::ConfigError, "seed list length must equal replications");
    if (cfg.seeds.empty())
        for (std::size_t r = 0; r < cfg.replications; ++r)
            cfg.seeds.push_back(cfg.optimizer.seed + r);

    if (cfg.problem == ProblemKind::SensorPlacement) {
        if (cfg.graph_path.empty() && cfg.detection_matrix_path.empty())
            throw Error(ErrorKind::ConfigError,
                        "sensor_placement needs 'graph' or 'detection_matrix'");
        if (!cfg.graph_path.empty()) require_file(cfg.graph_path, "graph");
        if (!cfg.detection_matrix_path.empty())
            require_file(cfg.detection_matrix_path, "detection_matrix");
    } else {
        if (cfg.ratings_path.empty())
            throw Error(ErrorKind::ConfigError, "recommender needs 'ratings'");
        require_file(cfg.ratings_path, "ratings");
    }
    return cfg;
}

namespace {

moea::Problem build_problem(const ExperimentConfig& cfg) {
    if (cfg.problem == ProblemKind::SensorPlacement) {
        wdn::DetectionMatrix d;
        if (!cfg.detection_matrix_path.empty()) {
            d = wdn::ingest_detection_matrix(cfg.detection_matrix_path, cfg.t_max);
        } else {
            graph::NetworkGraph g = graph::load_graph(cfg.graph_path);
            std::vector<std::size_t> events = cfg.events, locations = cfg.locations;
            if (events.empty()) {
                events.resize(g.node_count());
                std::iota(events.begin(), events.end(), 0);
            }
            if (locations.empty()) {
                locations.resize(g.node_count());
                std::iota(locations.begin(), locations.end(), 0);
            }
            d = wdn::simulate_detection_matrix(g, events, locations, cfg.travel_time_per_edge,
                                               cfg.t_max);
        }
        return wdn::make_sp_problem(d, cfg.budget);
    }
    recsys::RatingMatrix r = recsys::load_ratings(cfg.ratings_path);
    return recsys::make_rs_problem(r, cfg.users, cfg.top_l);
}

moea::ObjectiveVector canonical_reference(const moea::Problem& problem,
                                          const std::vector<double>& natural) {
    moea::ObjectiveVector ref;
    if (natural.empty()) return ref;
    if (natural.size() != problem.maximized.size())
        throw Error(ErrorKind::ConfigError, "reference_point size differs from objective count");
    for (std::size_t i = 0; i < natural.size(); ++i)
        ref.push_back(problem.maximized[i] ? -natural[i] : natural[i]);
    return ref;
}

std::string default_serialize(const moea::Genotype& g) {
    if (std::holds_alternative<moea::BinaryGenotype>(g)) {
        std::string out;
        for (auto bit : std::get<moea::BinaryGenotype>(g)) out += bit ? '1' : '0';
        return out;
    }
    const auto& mat = std::get<moea::IntMatrixGenotype>(g);
    std::string out;
    for (std::size_t r = 0; r < mat.rows; ++r) {
        if (r > 0) out += '|';
        for (std::size_t c = 0; c < mat.cols; ++c) {
            if (c > 0) out += ';';
            out += std::to_string(mat.at(r, c));
        }
    }
    return out;
}

moea::RunResult dispatch(Algorithm algo, const moea::Problem& problem,
                         const moea::OptimizerConfig& opt, std::size_t moead_t) {
    switch (algo) {
    case Algorithm::Nsga2: return moea::run_nsga2(problem, opt);
    case Algorithm::MoeaWst: return moea::run_moea_wst(problem, opt);
    case Algorithm::RandomSearch: return moea::run_random_search(problem, opt);
    case Algorithm::Moead: {
        std::size_t m = problem.maximized.size();
        std::size_t t = std::min(moead_t, opt.population_size);
        auto weights = moea::build_weight_vectors(opt.population_size, m, std::max<std::size_t>(t, 1));
        return moea::run_moead(problem, opt, weights);
    }
    }
    throw Error(ErrorKind::ConfigError, "unreachable algorithm");
}

void write_history(const std::string& path, const moea::RunResult& run) {
    // elapsed_ms is pinned to 0 in files: outputs must be byte-reproducible
    // for a fixed (config, seed), and wall-clock time is not. Real timing is
    // reported on stderr.
    std::string out = "generation,evaluations,hypervolume,elapsed_ms\n";
    for (const auto& row : run.history)
        out += std::to_string(row.generation) + "," + std::to_string(row.evaluations) + "," +
               csv::cell(row.hypervolume) + ",0\n";
    csv::write_file(path, out);
}

void write_front(const std::string& path, const moea::Problem& problem,
                 const moea::RunResult& run) {
    std::string out;
    for (std::size_t i = 0; i < problem.objective_names.size(); ++i) {
        if (i > 0) out += ',';
        out += problem.objective_names[i];
    }
    out += '\n';
    for (const auto& ind : run.front) {
        for (std::size_t i = 0; i < ind.objectives.size(); ++i) {
            if (i > 0) out += ',';
            double natural = problem.maximized[i] ? -ind.objectives[i] : ind.objectives[i];
            out += csv::cell(natural);
        }
        out += '\n';
    }
    csv::write_file(path, out);
}

void write_set(const std::string& path, const moea::Problem& problem, const moea::RunResult& run) {
    std::string out = "genotype\n";
    for (const auto& ind : run.front)
        out += (problem.serialize ? problem.serialize(ind.genotype)
                                  : default_serialize(ind.genotype)) +
               "\n";
    csv::write_file(path, out);
}

} // namespace

void run_experiment(const ExperimentConfig& cfg) {
    moea::Problem problem = build_problem(cfg);
    moea::OptimizerConfig opt = cfg.optimizer;
    opt.reference_point = canonical_reference(problem, cfg.natural_reference);

    fs::create_directories(cfg.output_dir);

    std::map<Algorithm, std::vector<moea::RunResult>> results;
    for (Algorithm algo : cfg.algorithms) {
        const fs::path dir = fs::path(cfg.output_dir) / to_string(algo);
        fs::create_directories(dir);
        std::vector<moea::RunResult>& runs = results[algo];

        for (std::size_t r = 0; r < cfg.replications; ++r) {
            moea::OptimizerConfig rep_opt = opt;
            rep_opt.seed = cfg.seeds[r];
            moea::RunResult run = dispatch(algo, problem, rep_opt, cfg.moead_neighborhood);

            const std::string tag = std::to_string(r + 1);
            write_history((dir / ("hv_history_" + tag + ".csv")).string(), run);
            write_front((dir / ("pareto_front_" + tag + ".csv")).string(), problem, run);
            write_set((dir / ("pareto_set_" + tag + ".csv")).string(), problem, run);
            std::cerr << to_string(algo) << " replication " << tag << " seed " << rep_opt.seed
                      << ": " << run.history.back().evaluations << " evaluations, "
                      << run.history.back().wall_ms << " ms\n";
            runs.push_back(std::move(run));
        }

        // Per-generation mean and population standard deviation across runs.
        std::string summary = "generation,mean_hypervolume,std_hypervolume\n";
        const std::size_t gens = runs.front().history.size();
        for (std::size_t g = 0; g < gens; ++g) {
            double mean = 0.0;
            for (const auto& run : runs) mean += run.history[g].hypervolume;
            mean /= static_cast<double>(runs.size());
            double var = 0.0;
            for (const auto& run : runs) {
                double d = run.history[g].hypervolume - mean;
                var += d * d;
            }
            var /= static_cast<double>(runs.size());
            summary += std::to_string(runs.front().history[g].generation) + "," + csv::cell(mean) +
                       "," + csv::cell(std::sqrt(var)) + "\n";
        }
        csv::write_file((dir / "summary.csv").string(), summary);
    }

    if (cfg.algorithms.size() >= 2) {
        std::string cov = "algo_a,algo_b,replication,coverage\n";
        for (Algorithm a : cfg.algorithms)
            for (Algorithm b : cfg.algorithms) {
                if (a == b) continue;
                for (std::size_t r = 0; r < cfg.replications; ++r) {
                    double c = moea::coverage_metric(results[a][r].front_objectives(),
                                                     results[b][r].front_objectives());
                    cov += std::string(to_string(a)) + "," + to_string(b) + "," +
                           std::to_string(r + 1) + "," + csv::cell(c) + "\n";
                }
            }
        csv::write_file((fs::path(cfg.output_dir) / "coverage.csv").string(), cov);
    }
}

void run_experiment_file(const std::string& config_path) {
    run_experiment(load_experiment_config(config_path));
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> parse_removal_sets(
    const std::string& spec) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> sets;
    for (const std::string& group : csv::split(spec, ';')) {
        if (group.empty()) continue;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const std::string& item : csv::split(group, ',')) {
            auto parts = csv::split(item, '-');
            if (parts.size() != 2)
                throw Error(ErrorKind::ConfigError, "bad edge spec '" + item + "', expected u-v");
            long long u = csv::parse_int(parts[0], "remove-edges");
            long long v = csv::parse_int(parts[1], "remove-edges");
            if (u < 0 || v < 0) throw Error(ErrorKind::ConfigError, "negative node id");
            edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        }
        if (!edges.empty()) sets.push_back(std::move(edges));
    }
    return sets;
}

namespace {

std::string removal_label(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::string label = "minus:";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i > 0) label += ' ';
        label += std::to_string(edges[i].first) + "-" + std::to_string(edges[i].second);
    }
    return label;
}

} // namespace

void analyze_graph(const AnalyzeOptions& options) {
    graph::NetworkGraph g = graph::load_graph(options.graph_path);
    fs::create_directories(options.output_dir);
    const fs::path dir(options.output_dir);

    {
        graph::CentralityReport rep = graph::centrality_report(g);
        std::string out = "metric,value\n";
        out += "diameter," + std::to_string(rep.diameter) + "\n";
        out += "characteristic_path_length," + csv::cell(rep.characteristic_path_length) + "\n";
        out += "density," + csv::cell(rep.density) + "\n";
        out += "link_per_node," + csv::cell(rep.link_per_node) + "\n";
        out += "central_point_dominance," + csv::cell(rep.central_point_dominance) + "\n";
        out += "clustering_coefficient," + csv::cell(rep.clustering_coefficient) + "\n";
        out += "connected," + std::string(rep.connected ? "1" : "0") + "\n";
        for (std::size_t i = 0; i < rep.betweenness.size(); ++i)
            out += "betweenness_" + std::to_string(i) + "," + csv::cell(rep.betweenness[i]) + "\n";
        csv::write_file((dir / "centrality.csv").string(), out);
    }

    {
        std::string out =
            "label,efficiency,v_mean,v_max,algebraic_connectivity,js_metric,wasserstein,"
            "loss_of_efficiency\n";
        graph::VulnerabilityReport base = graph::vulnerability_report(g);
        out += "G," + csv::cell(base.efficiency) + "," + csv::cell(base.v_mean) + "," +
               csv::cell(base.v_max) + "," + csv::cell(base.algebraic_connectivity) + ",0,0,0\n";
        for (const auto& edges : options.removal_sets) {
            graph::NetworkGraph cut = g.without_edges(edges);
            graph::VulnerabilityReport rep = graph::vulnerability_report(cut);
            double js = graph::graph_distribution_distance(g, cut,
                                                           graph::CriticalityMetric::JensenShannon);
            double wst = graph::graph_distribution_distance(g, cut,
                                                            graph::CriticalityMetric::Wasserstein);
            double loss = graph::loss_of_efficiency(base.efficiency, rep.efficiency);
            out += removal_label(edges) + "," + csv::cell(rep.efficiency) + "," +
                   csv::cell(rep.v_mean) + "," + csv::cell(rep.v_max) + "," +
                   csv::cell(rep.algebraic_connectivity) + "," + csv::cell(js) + "," +
                   csv::cell(wst) + "," + csv::cell(loss) + "\n";
        }
        csv::write_file((dir / "vulnerability.csv").string(), out);
    }

    {
        auto scores = graph::edge_criticality_map(g, graph::CriticalityMetric::Wasserstein);
        std::string out = "u,v,score\n";
        for (std::size_t e = 0; e < g.edges().size(); ++e)
            out += std::to_string(g.edges()[e].u) + "," + std::to_string(g.edges()[e].v) + "," +
                   csv::cell(scores[e]) + "\n";
        csv::write_file((dir / "edge_criticality.csv").string(), out);
    }

    if (options.clusters > 0) {
        auto assignment = graph::spectral_clustering(g, options.clusters, options.seed);
        std::string out = "node,cluster\n";
        for (std::size_t i = 0; i < assignment.size(); ++i)
            out += std::to_string(i) + "," + std::to_string(assignment[i]) + "\n";
        csv::write_file((dir / "clusters.csv").string(), out);
    }
}

std::string resilience_report(
    const std::string& graph_path,
    const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& removal_sets) {
    graph::NetworkGraph g = graph::load_graph(graph_path);
    double e_base = graph::efficiency(g);
    std::string out = "label,js_metric,wasserstein,loss_of_efficiency,efficiency_ratio\n";
    for (const auto& edges : removal_sets) {
        graph::NetworkGraph cut = g.without_edges(edges);
        double js =
            graph::graph_distribution_distance(g, cut, graph::CriticalityMetric::JensenShannon);
        double wst =
            graph::graph_distribution_distance(g, cut, graph::CriticalityMetric::Wasserstein);
        double e_cut = graph::efficiency(cut);
        out += removal_label(edges) + "," + csv::cell(js) + "," + csv::cell(wst) + "," +
               csv::cell(graph::loss_of_efficiency(e_base, e_cut)) + "," +
               csv::cell(graph::efficiency_ratio(e_base, e_cut)) + "\n";
    }
    return out;
}

} // namespace mowst::experiment
