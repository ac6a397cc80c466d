// Timing comparison between the serial reference kernels and their
// OpenMP-parallel counterparts on synthetic inputs. The parallel kernels
// write disjoint slots only, so both variants must agree bitwise; this tool
// reports wall times and verifies that agreement on the way.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "mowst/graph.hpp"
#include "mowst/histogram.hpp"
#include "mowst/ot.hpp"
#include "mowst/parallel.hpp"
#include "mowst/recsys.hpp"
#include "mowst/rng.hpp"
#include "mowst/wdn.hpp"

namespace {

using mowst::Histogram;
using mowst::Rng;

double time_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

template <typename T>
void report(const char* name, const std::vector<T>& serial, const std::vector<T>& parallel,
            double ms_serial, double ms_parallel) {
    bool match = serial == parallel;
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", name,
                ms_serial, ms_parallel, ms_parallel > 0.0 ? ms_serial / ms_parallel : 0.0,
                match ? "bitwise-equal" : "MISMATCH");
}

mowst::graph::NetworkGraph random_graph(std::size_t n, std::size_t extra_edges, Rng& rng) {
    std::vector<mowst::graph::Edge> edges;
    for (std::size_t v = 1; v < n; ++v)
        edges.push_back({v, static_cast<std::size_t>(rng.index(v)), rng.real(600.0, 7200.0)});
    std::size_t added = 0;
    while (added < extra_edges) {
        auto [u, v] = rng.two_distinct(n);
        bool exists = false;
        for (const auto& e : edges)
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) exists = true;
        if (exists) continue;
        edges.push_back({u, v, rng.real(600.0, 7200.0)});
        ++added;
    }
    return mowst::graph::NetworkGraph(n, std::move(edges));
}

} // namespace

int main() {
    std::printf("OpenMP threads available: %d\n\n", mowst::max_threads());
    Rng rng(20240817);

    {
        auto g = random_graph(220, 260, rng);
        std::vector<int> a, b;
        double ts = time_ms([&] { a = mowst::graph::all_pairs_hop_distances_serial(g); });
        double tp = time_ms([&] { b = mowst::graph::all_pairs_hop_distances(g); });
        report("all-pairs BFS", a, b, ts, tp);
    }

    {
        auto g = random_graph(90, 110, rng);
        std::vector<double> a, b;
        double ts = time_ms([&] { a = mowst::graph::edge_criticality_map_serial(g); });
        double tp = time_ms([&] { b = mowst::graph::edge_criticality_map(g); });
        report("edge criticality", a, b, ts, tp);
    }

    {
        auto g = random_graph(110, 140, rng);
        std::vector<double> a, b;
        double ts = time_ms([&] { a = mowst::graph::node_removal_efficiencies_serial(g); });
        double tp = time_ms([&] { b = mowst::graph::node_removal_efficiencies(g); });
        report("node-removal efficiency", a, b, ts, tp);
    }

    {
        std::vector<Histogram> hists;
        std::vector<double> pts(40);
        std::iota(pts.begin(), pts.end(), 0.0);
        for (int i = 0; i < 240; ++i) {
            std::vector<double> w(40);
            double total = 0.0;
            for (double& x : w) {
                x = rng.real01();
                total += x;
            }
            for (double& x : w) x /= total;
            hists.push_back(Histogram::from_1d(pts, w));
        }
        std::vector<double> a, b;
        double ts = time_ms([&] { a = mowst::ot::pairwise_wasserstein_1d_serial(hists); });
        double tp = time_ms([&] { b = mowst::ot::pairwise_wasserstein_1d(hists); });
        report("pairwise W1 matrix", a, b, ts, tp);
    }

    {
        mowst::recsys::RatingMatrix r;
        r.user_count = 260;
        r.item_count = 240;
        r.ratings.assign(r.user_count * r.item_count, 0);
        r.item_degree.assign(r.item_count, 0);
        for (std::size_t u = 0; u < r.user_count; ++u)
            for (std::size_t o = 0; o < r.item_count; ++o)
                if (rng.coin(0.12)) {
                    r.ratings[u * r.item_count + o] = static_cast<int>(rng.int_in(1, 5));
                    ++r.item_degree[o];
                }
        std::vector<double> a, b;
        double ts = time_ms(
            [&] { a = mowst::recsys::similarity_matrix_serial(r, mowst::recsys::SimilarityMode::Cosine); });
        double tp = time_ms(
            [&] { b = mowst::recsys::similarity_matrix(r, mowst::recsys::SimilarityMode::Cosine); });
        report("cosine similarity matrix", a, b, ts, tp);
    }

    {
        auto g = random_graph(320, 420, rng);
        std::vector<std::size_t> nodes(g.node_count());
        std::iota(nodes.begin(), nodes.end(), 0);
        mowst::wdn::DetectionMatrix a, b;
        double ts = time_ms(
            [&] { a = mowst::wdn::simulate_detection_matrix_serial(g, nodes, nodes, std::nullopt, 1e9); });
        double tp =
            time_ms([&] { b = mowst::wdn::simulate_detection_matrix(g, nodes, nodes, std::nullopt, 1e9); });
        report("detection-matrix Dijkstra", a.times, b.times, ts, tp);
    }

    return 0;
}
