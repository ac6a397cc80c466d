#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "mowst/error.hpp"
#include "mowst/graph.hpp"
#include "mowst/ot.hpp"
#include "oracles.hpp"

using mowst::Error;
using mowst::Rng;
namespace graph = mowst::graph;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& contents) {
    fs::path path = fs::temp_directory_path() / name;
    std::ofstream(path) << contents;
    return path;
}

graph::NetworkGraph path3() {
    return graph::NetworkGraph(3, {{0, 1}, {1, 2}});
}

graph::NetworkGraph triangle() {
    return graph::NetworkGraph(3, {{0, 1}, {1, 2}, {0, 2}});
}

// 25 nodes: a 9-node path (diameter 8) with 16 leaves hung on nodes 1..7.
graph::NetworkGraph treeish_25() {
    std::vector<graph::Edge> edges;
    for (std::size_t v = 0; v < 8; ++v) edges.push_back({v, v + 1});
    for (std::size_t leaf = 9; leaf < 25; ++leaf)
        edges.push_back({leaf, 1 + (leaf - 9) % 7});
    return graph::NetworkGraph(25, std::move(edges));
}

} // namespace

TEST_CASE("edge lists parse with optional weights") {
    auto p = write_temp("mowst_graph_ok.csv", "0,1\n1,2\n");
    auto g = graph::load_graph(p.string());
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(2, 1));
    fs::remove(p);

    auto pw = write_temp("mowst_graph_w.csv", "0,1,2.5\n");
    auto gw = graph::load_graph(pw.string());
    CHECK(gw.edges().front().weight == 2.5);
    fs::remove(pw);
}

TEST_CASE("edge list rejects self-loops, duplicates and junk") {
    auto p1 = write_temp("mowst_graph_loop.csv", "0,0\n");
    CHECK_THROWS_WITH_AS(graph::load_graph(p1.string()), doctest::Contains("SelfLoop"), Error);
    fs::remove(p1);

    auto p2 = write_temp("mowst_graph_dup.csv", "0,1\n1,0\n");
    CHECK_THROWS_WITH_AS(graph::load_graph(p2.string()), doctest::Contains("DuplicateEdge"), Error);
    fs::remove(p2);

    auto p3 = write_temp("mowst_graph_bad.csv", "0,1\nx,2\n");
    CHECK_THROWS_WITH_AS(graph::load_graph(p3.string()), doctest::Contains("line 2"), Error);
    fs::remove(p3);
}

TEST_CASE("star graph distance distributions") {
    graph::NetworkGraph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    SUBCASE("center sees every node at hop one") {
        auto h = graph::node_distance_distribution(star, 0);
        REQUIRE(h.size() == 2); // support runs to the graph diameter
        CHECK(h.weights[0] == doctest::Approx(1.0));
        CHECK(h.weights[1] == doctest::Approx(0.0));
    }
    SUBCASE("a leaf sees one neighbor and three two-hop nodes") {
        auto h = graph::node_distance_distribution(star, 1);
        CHECK(h.weights[0] == doctest::Approx(0.25));
        CHECK(h.weights[1] == doctest::Approx(0.75));
    }
}

TEST_CASE("node distribution rejects out-of-range nodes") {
    CHECK_THROWS_WITH_AS(graph::node_distance_distribution(path3(), 7),
                         doctest::Contains("NodeOutOfRange"), Error);
}

TEST_CASE("network distribution on a 25-node diameter-8 fixture") {
    auto g = treeish_25();
    auto h = graph::graph_distance_distribution(g);
    REQUIRE(h.size() == 8);
    CHECK(h.support.back()[0] == doctest::Approx(8.0));
    CHECK(h.total_mass() == doctest::Approx(1.0).epsilon(1e-9));

    // graph-level weights equal the mean of the node-level distributions
    for (std::size_t k = 0; k < h.size(); ++k) {
        double mean_k = 0.0;
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            auto hi = graph::node_distance_distribution(g, i);
            mean_k += hi.weights[k];
        }
        mean_k /= static_cast<double>(g.node_count());
        CHECK(h.weights[k] == doctest::Approx(mean_k).epsilon(1e-12));
    }
}

TEST_CASE("centrality on hand-checked graphs") {
    SUBCASE("triangle") {
        auto rep = graph::centrality_report(triangle());
        CHECK(rep.density == doctest::Approx(1.0));
        CHECK(rep.link_per_node == doctest::Approx(1.0));
        CHECK(rep.diameter == 1);
        CHECK(rep.characteristic_path_length == doctest::Approx(1.0));
        CHECK(rep.clustering_coefficient == doctest::Approx(1.0));
        CHECK(rep.connected);
    }
    SUBCASE("three-node path") {
        auto rep = graph::centrality_report(path3());
        CHECK(rep.density == doctest::Approx(2.0 / 3.0));
        CHECK(rep.characteristic_path_length == doctest::Approx(4.0 / 3.0));
        CHECK(rep.diameter == 2);
        CHECK(rep.clustering_coefficient == doctest::Approx(0.0));
        // only the middle node is interior to any shortest path
        CHECK(rep.betweenness[0] == doctest::Approx(0.0));
        CHECK(rep.betweenness[1] == doctest::Approx(2.0 / 9.0));
        CHECK(rep.betweenness[2] == doctest::Approx(0.0));
        CHECK(rep.central_point_dominance == doctest::Approx(2.0 / 9.0));
    }
    SUBCASE("single edge has no triples") {
        auto rep = graph::centrality_report(graph::NetworkGraph(2, {{0, 1}}));
        CHECK(rep.clustering_coefficient == doctest::Approx(0.0));
    }
    SUBCASE("empty graph is rejected") {
        CHECK_THROWS_WITH_AS(graph::centrality_report(graph::NetworkGraph(0, {})),
                             doctest::Contains("EmptyGraph"), Error);
    }
}

TEST_CASE("betweenness matches all-shortest-path enumeration on small graphs") {
    Rng rng(11);
    for (int t = 0; t < 8; ++t) {
        auto g = fixtures::random_connected_graph(5 + t % 4, 3, rng);
        auto rep = graph::centrality_report(g);
        auto want = oracles::brute_betweenness(g);
        for (std::size_t i = 0; i < want.size(); ++i)
            CHECK(rep.betweenness[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("efficiency values and loss under removals") {
    CHECK(graph::efficiency(triangle()) == doctest::Approx(1.0));
    CHECK(graph::efficiency(path3()) == doctest::Approx(5.0 / 6.0));

    SUBCASE("removing nothing loses nothing") {
        auto impact = graph::edge_removal_impact(triangle(), {});
        CHECK(impact.loss == doctest::Approx(0.0));
        CHECK(impact.ratio == doctest::Approx(1.0));
    }
    SUBCASE("unknown edges are rejected") {
        CHECK_THROWS_WITH_AS(graph::edge_removal_impact(path3(), {{0, 2}}),
                             doctest::Contains("UnknownEdge"), Error);
    }
    SUBCASE("recorded efficiency pairs reproduce the loss formula") {
        CHECK(graph::loss_of_efficiency(0.068608, 0.065390) == doctest::Approx(0.0469).epsilon(5e-3));
        CHECK(graph::loss_of_efficiency(0.047557, 0.031077) == doctest::Approx(0.3465).epsilon(5e-3));
    }
    SUBCASE("the graph overload agrees with the two-value form") {
        auto g = fixtures::net1();
        double direct = graph::loss_of_efficiency(g, {{1, 2}});
        double manual = graph::loss_of_efficiency(graph::efficiency(g),
                                                  graph::efficiency(g.without_edges({{1, 2}})));
        CHECK(direct == doctest::Approx(manual));
        CHECK(direct > 0.0);
    }
}

TEST_CASE("edge removal never shortens distances and never helps efficiency") {
    Rng rng(12);
    for (int t = 0; t < 6; ++t) {
        auto g = fixtures::random_connected_graph(10, 8, rng);
        auto base = graph::all_pairs_hop_distances_serial(g);
        double e_base = graph::efficiency(g);
        const auto& e = g.edges()[static_cast<std::size_t>(rng.index(g.edges().size()))];
        auto cut = g.without_edges({{e.u, e.v}});
        auto after = graph::all_pairs_hop_distances_serial(cut);
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (after[i] == graph::kUnreachable) continue;
            CHECK(after[i] >= base[i]);
        }
        CHECK(graph::efficiency(cut) <= e_base + 1e-12);
        CHECK(graph::loss_of_efficiency(e_base, graph::efficiency(cut)) >= -1e-12);
    }
}

TEST_CASE("vulnerability report basics") {
    SUBCASE("complete graphs have lambda2 equal to n") {
        for (std::size_t n : {3u, 4u, 5u}) {
            std::vector<graph::Edge> edges;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j});
            auto rep = graph::vulnerability_report(graph::NetworkGraph(n, std::move(edges)));
            CHECK(rep.algebraic_connectivity == doctest::Approx(static_cast<double>(n)).epsilon(1e-8));
            CHECK(rep.efficiency == doctest::Approx(1.0));
        }
    }
    SUBCASE("disconnected graphs have zero algebraic connectivity") {
        auto rep = graph::vulnerability_report(graph::NetworkGraph(4, {{0, 1}, {2, 3}}));
        CHECK(rep.algebraic_connectivity == 0.0);
    }
    SUBCASE("node-removal drops are averaged and maximized") {
        auto rep = graph::vulnerability_report(path3());
        // removing the middle node disconnects: efficiency 0, drop 1
        CHECK(rep.v_max == doctest::Approx(1.0));
        CHECK(rep.v_mean > 0.0);
        CHECK(rep.v_mean_ratio >= 1.0);
    }
}

TEST_CASE("edge criticality ranks bridges above cycle edges") {
    // barbell: two triangles joined by one bridge
    graph::NetworkGraph barbell(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
    auto scores = graph::edge_criticality_map(barbell);
    double bridge_score = 0.0, max_other = 0.0;
    for (std::size_t e = 0; e < barbell.edges().size(); ++e) {
        const auto& edge = barbell.edges()[e];
        if (edge.u == 2 && edge.v == 3)
            bridge_score = scores[e];
        else
            max_other = std::max(max_other, scores[e]);
    }
    CHECK(bridge_score > max_other);
}

TEST_CASE("symmetric cycle edges score identically") {
    graph::NetworkGraph cycle(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    auto scores = graph::edge_criticality_map(cycle);
    for (std::size_t e = 1; e < scores.size(); ++e)
        CHECK(scores[e] == doctest::Approx(scores[0]).epsilon(1e-12));
}

TEST_CASE("removing one clique edge shifts exactly one pair to distance two") {
    // K5 minus an edge: the hop multiset changes by 2 ordered pairs out of
    // 20, so criticality under W1 is exactly 2/20.
    std::vector<graph::Edge> edges;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) edges.push_back({i, j});
    graph::NetworkGraph k5(5, std::move(edges));
    auto scores = graph::edge_criticality_map(k5);
    for (double s : scores) CHECK(s == doctest::Approx(2.0 / 20.0).epsilon(1e-12));
}

TEST_CASE("spectral clustering recovers structure") {
    SUBCASE("two disjoint triangles split into the components") {
        graph::NetworkGraph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
        auto got = graph::spectral_clustering(two, 2, 7);
        auto comps = graph::connected_components(two);
        CHECK(got == comps);
    }
    SUBCASE("k = 1 puts everyone together") {
        auto got = graph::spectral_clustering(triangle(), 1, 7);
        for (auto c : got) CHECK(c == 0);
    }
    SUBCASE("k beyond n is rejected") {
        CHECK_THROWS_WITH_AS(graph::spectral_clustering(triangle(), 4, 7),
                             doctest::Contains("KTooLarge"), Error);
    }
    SUBCASE("weighted two-blob graph splits at the weak link") {
        std::vector<graph::Edge> edges;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i + 1; j < 5; ++j) {
                edges.push_back({i, j, 1.0});
                edges.push_back({i + 5, j + 5, 1.0});
            }
        edges.push_back({4, 5, 0.01});
        graph::NetworkGraph blobs(10, std::move(edges));
        auto got = graph::spectral_clustering(blobs, 2, 3);

        // oracle: the bipartition with the smallest normalized cut
        double best = 1e300;
        std::vector<char> best_side;
        for (unsigned mask = 1; mask < (1u << 9); ++mask) {
            std::vector<char> side(10, 0);
            for (std::size_t i = 1; i < 10; ++i) side[i] = (mask >> (i - 1)) & 1;
            double cut = oracles::normalized_cut(blobs, side);
            if (cut < best) {
                best = cut;
                best_side = side;
            }
        }
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 10; ++j)
                CHECK((got[i] == got[j]) == (best_side[i] == best_side[j]));
    }
    SUBCASE("k = component count reproduces the components") {
        Rng rng(13);
        for (int t = 0; t < 5; ++t) {
            auto g1 = fixtures::random_connected_graph(4 + t, 2, rng);
            auto g2 = fixtures::random_connected_graph(3 + t, 1, rng);
            std::vector<graph::Edge> edges = g1.edges();
            for (auto e : g2.edges())
                edges.push_back({e.u + g1.node_count(), e.v + g1.node_count(), e.weight});
            graph::NetworkGraph g(g1.node_count() + g2.node_count(), std::move(edges));
            auto got = graph::spectral_clustering(g, 2, 17 + t);
            CHECK(got == graph::connected_components(g));
        }
    }
}
