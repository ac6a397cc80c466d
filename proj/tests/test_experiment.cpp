#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "mowst/csv.hpp"
#include "mowst/error.hpp"
#include "mowst/experiment.hpp"

using mowst::Error;
namespace experiment = mowst::experiment;
namespace fs = std::filesystem;

namespace {

std::string net1_csv() {
    auto g = fixtures::net1();
    std::ostringstream out;
    for (const auto& e : g.edges()) out << e.u << "," << e.v << "," << e.weight << "\n";
    return out.str();
}

fs::path write_temp(const std::string& name, const std::string& contents) {
    fs::path path = fs::temp_directory_path() / name;
    std::ofstream(path) << contents;
    return path;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sp_config_json(const std::string& graph_path, const std::string& out_dir) {
    return std::string("{\n") + "  \"problem\": \"sensor_placement\",\n" +
           "  \"algorithms\": [\"nsga2\", \"moea_wst\"],\n" + "  \"graph\": \"" + graph_path +
           "\",\n" + "  \"events\": [1,2,3,4,5,6,7,8,9],\n" +
           "  \"locations\": [1,2,3,4,5,6,7,8,9],\n" + "  \"budget\": 2,\n" +
           "  \"population_size\": 16,\n" + "  \"offspring_per_generation\": 4,\n" +
           "  \"generations\": 5,\n" + "  \"reference_point\": [90000, 90000],\n" +
           "  \"replications\": 2,\n" + "  \"seeds\": [11, 12],\n" + "  \"output_dir\": \"" +
           out_dir + "\"\n}\n";
}

} // namespace

TEST_CASE("experiment produces the full artifact set deterministically") {
    auto graph_path = write_temp("mowst_exp_net1.csv", net1_csv());
    fs::path out1 = fs::temp_directory_path() / "mowst_exp_out1";
    fs::path out2 = fs::temp_directory_path() / "mowst_exp_out2";
    fs::remove_all(out1);
    fs::remove_all(out2);

    auto cfg_path1 = write_temp("mowst_exp_cfg1.json", sp_config_json(graph_path.string(), out1.string()));
    auto cfg_path2 = write_temp("mowst_exp_cfg2.json", sp_config_json(graph_path.string(), out2.string()));

    experiment::run_experiment_file(cfg_path1.string());
    experiment::run_experiment_file(cfg_path2.string());

    const std::vector<std::string> algos = {"nsga2", "moea_wst"};
    for (const auto& algo : algos) {
        for (int r = 1; r <= 2; ++r) {
            auto tag = std::to_string(r);
            for (const std::string stem :
                 {"hv_history_" + tag, "pareto_front_" + tag, "pareto_set_" + tag}) {
                fs::path f1 = out1 / algo / (stem + ".csv");
                fs::path f2 = out2 / algo / (stem + ".csv");
                REQUIRE(fs::exists(f1));
                CHECK(slurp(f1) == slurp(f2));
            }
        }
        REQUIRE(fs::exists(out1 / algo / "summary.csv"));
        CHECK(slurp(out1 / algo / "summary.csv") == slurp(out2 / algo / "summary.csv"));
    }
    REQUIRE(fs::exists(out1 / "coverage.csv"));
    CHECK(slurp(out1 / "coverage.csv") == slurp(out2 / "coverage.csv"));

    SUBCASE("history files have one row per generation plus the initial one") {
        auto rows = mowst::csv::read_rows((out1 / "nsga2" / "hv_history_1.csv").string());
        CHECK(rows.size() == 1 + 6); // header + generations 0..5
        CHECK(rows[0] ==
              std::vector<std::string>{"generation", "evaluations", "hypervolume", "elapsed_ms"});
    }

    SUBCASE("summary statistics recompute from the per-replication histories") {
        auto summary = mowst::csv::read_rows((out1 / "nsga2" / "summary.csv").string());
        auto h1 = mowst::csv::read_rows((out1 / "nsga2" / "hv_history_1.csv").string());
        auto h2 = mowst::csv::read_rows((out1 / "nsga2" / "hv_history_2.csv").string());
        for (std::size_t row = 1; row < summary.size(); ++row) {
            double v1 = mowst::csv::parse_double(h1[row][2], "h1");
            double v2 = mowst::csv::parse_double(h2[row][2], "h2");
            double mean = (v1 + v2) / 2.0;
            double var = ((v1 - mean) * (v1 - mean) + (v2 - mean) * (v2 - mean)) / 2.0;
            CHECK(mowst::csv::parse_double(summary[row][1], "mean") ==
                  doctest::Approx(mean).epsilon(1e-12));
            CHECK(mowst::csv::parse_double(summary[row][2], "std") ==
                  doctest::Approx(std::sqrt(var)).epsilon(1e-12));
        }
    }

    fs::remove(graph_path);
    fs::remove(cfg_path1);
    fs::remove(cfg_path2);
    fs::remove_all(out1);
    fs::remove_all(out2);
}

TEST_CASE("config validation catches the usual mistakes") {
    SUBCASE("missing data file names the path") {
        auto cfg = write_temp("mowst_cfg_missing.json",
                              "{\"problem\":\"sensor_placement\",\"algorithm\":\"nsga2\","
                              "\"graph\":\"/nonexistent/g.csv\"}");
        try {
            experiment::load_experiment_config(cfg.string());
            FAIL("expected a config error");
        } catch (const Error& e) {
            CHECK(e.kind() == mowst::ErrorKind::ConfigError);
            CHECK(std::string(e.what()).find("/nonexistent/g.csv") != std::string::npos);
        }
        fs::remove(cfg);
    }
    SUBCASE("unknown algorithms are rejected") {
        auto cfg = write_temp("mowst_cfg_algo.json",
                              "{\"problem\":\"sensor_placement\",\"algorithm\":\"simulated_annealing\","
                              "\"graph\":\"x.csv\"}");
        CHECK_THROWS_WITH_AS(experiment::load_experiment_config(cfg.string()),
                             doctest::Contains("unknown algorithm"), Error);
        fs::remove(cfg);
    }
    SUBCASE("seed lists must match replications") {
        auto graph_path = write_temp("mowst_cfg_net1.csv", net1_csv());
        auto cfg = write_temp("mowst_cfg_seeds.json",
                              "{\"problem\":\"sensor_placement\",\"algorithm\":\"nsga2\",\"graph\":\"" +
                                  graph_path.string() +
                                  "\",\"replications\":3,\"seeds\":[1,2]}");
        CHECK_THROWS_WITH_AS(experiment::load_experiment_config(cfg.string()),
                             doctest::Contains("seed list"), Error);
        fs::remove(cfg);
        fs::remove(graph_path);
    }
    SUBCASE("unknown keys are flagged") {
        auto cfg = write_temp("mowst_cfg_key.json",
                              "{\"problem\":\"sensor_placement\",\"algorithm\":\"nsga2\","
                              "\"graph\":\"x.csv\",\"populationsize\":3}");
        CHECK_THROWS_WITH_AS(experiment::load_experiment_config(cfg.string()),
                             doctest::Contains("unknown config key"), Error);
        fs::remove(cfg);
    }
}

TEST_CASE("graph analysis emits every report") {
    auto graph_path = write_temp("mowst_analyze_net1.csv", net1_csv());
    fs::path out = fs::temp_directory_path() / "mowst_analyze_out";
    fs::remove_all(out);

    experiment::AnalyzeOptions opts;
    opts.graph_path = graph_path.string();
    opts.output_dir = out.string();
    opts.clusters = 2;
    opts.removal_sets = experiment::parse_removal_sets("1-2;1-2,3-6");
    experiment::analyze_graph(opts);

    for (const std::string name :
         {"centrality.csv", "vulnerability.csv", "edge_criticality.csv", "clusters.csv"})
        CHECK(fs::exists(out / name));

    auto vuln = mowst::csv::read_rows((out / "vulnerability.csv").string());
    REQUIRE(vuln.size() == 4); // header + base + two removal sets
    CHECK(vuln[0][0] == "label");
    CHECK(vuln[1][0] == "G");

    auto crit = mowst::csv::read_rows((out / "edge_criticality.csv").string());
    CHECK(crit.size() == 1 + fixtures::net1().edge_count());
    CHECK(crit[0] == std::vector<std::string>{"u", "v", "score"});

    fs::remove(graph_path);
    fs::remove_all(out);
}

TEST_CASE("removal set specs parse") {
    auto sets = experiment::parse_removal_sets("0-1;2-3,4-5");
    REQUIRE(sets.size() == 2);
    CHECK(sets[0] == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(sets[1] == std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {4, 5}});
    CHECK_THROWS_AS(experiment::parse_removal_sets("0+1"), Error);
}

TEST_CASE("resilience report lists one row per removal set") {
    auto graph_path = write_temp("mowst_resilience_net1.csv", net1_csv());
    auto report = experiment::resilience_report(graph_path.string(),
                                                experiment::parse_removal_sets("1-2;3-6"));
    auto lines = mowst::csv::split(report, '\n');
    CHECK(lines[0] == "label,js_metric,wasserstein,loss_of_efficiency,efficiency_ratio");
    CHECK(lines.size() >= 4);
    fs::remove(graph_path);
}
