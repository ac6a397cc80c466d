#ifndef MOWST_TESTS_FIXTURES_HPP
#define MOWST_TESTS_FIXTURES_HPP

#include <numeric>
#include <vector>

#include "mowst/graph.hpp"
#include "mowst/histogram.hpp"
#include "mowst/recsys.hpp"
#include "mowst/rng.hpp"
#include "mowst/wdn.hpp"

namespace fixtures {

/// 11-node benchmark water network: reservoir (0), nine junctions (1..9)
/// and a tank (10), 13 weighted pipes (travel seconds).
inline mowst::graph::NetworkGraph net1() {
    std::vector<mowst::graph::Edge> edges = {
        {0, 1, 600.0},  {1, 2, 1800.0}, {2, 3, 2400.0}, {3, 4, 1500.0}, {5, 6, 2100.0},
        {6, 7, 1700.0}, {8, 9, 2600.0}, {10, 3, 1200.0}, {2, 5, 2000.0}, {3, 6, 2500.0},
        {4, 7, 2800.0}, {5, 8, 1900.0}, {6, 9, 2200.0},
    };
    return mowst::graph::NetworkGraph(11, std::move(edges));
}

inline std::vector<std::size_t> net1_junctions() {
    return {1, 2, 3, 4, 5, 6, 7, 8, 9};
}

inline mowst::wdn::DetectionMatrix net1_detection() {
    return mowst::wdn::simulate_detection_matrix(net1(), net1_junctions(), net1_junctions());
}

/// Random connected weighted graph: spanning tree plus extra edges.
inline mowst::graph::NetworkGraph random_connected_graph(std::size_t n, std::size_t extra,
                                                         mowst::Rng& rng, double w_lo = 600.0,
                                                         double w_hi = 7200.0) {
    std::vector<mowst::graph::Edge> edges;
    for (std::size_t v = 1; v < n; ++v)
        edges.push_back({v, static_cast<std::size_t>(rng.index(v)), rng.real(w_lo, w_hi)});
    auto present = [&](std::size_t u, std::size_t v) {
        for (const auto& e : edges)
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return true;
        return false;
    };
    std::size_t added = 0;
    while (added < extra) {
        auto [u, v] = rng.two_distinct(n);
        if (present(u, v)) continue;
        edges.push_back({u, v, rng.real(w_lo, w_hi)});
        ++added;
    }
    return mowst::graph::NetworkGraph(n, std::move(edges));
}

/// Random normalized 1-D histogram with coordinates in [0, 100].
inline mowst::Histogram random_histogram_1d(mowst::Rng& rng, std::size_t max_bins) {
    std::size_t bins = 1 + static_cast<std::size_t>(rng.index(max_bins));
    std::vector<double> pts(bins), w(bins);
    double total = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        pts[i] = rng.real(0.0, 100.0);
        w[i] = rng.real01() + 1e-3;
        total += w[i];
    }
    for (double& x : w) x /= total;
    return mowst::Histogram::from_1d(pts, w);
}

/// Five users, six items, hand-checkable ratings (0 = missing).
///   degrees: item0:5 item1:4 item2:3 item3:2 item4:1 item5:5
inline mowst::recsys::RatingMatrix small_ratings() {
    mowst::recsys::RatingMatrix r;
    r.user_count = 5;
    r.item_count = 6;
    r.ratings = {
        5, 4, 3, 2, 1, 2, // user 0 rated everything
        4, 5, 2, 0, 0, 3, // user 1
        3, 2, 4, 0, 0, 5, // user 2
        2, 3, 0, 5, 0, 4, // user 3
        5, 0, 0, 0, 0, 1, // user 4
    };
    r.item_degree.assign(6, 0);
    for (std::size_t u = 0; u < 5; ++u)
        for (std::size_t o = 0; o < 6; ++o)
            if (r.rating(u, o) > 0) ++r.item_degree[o];
    return r;
}

} // namespace fixtures

#endif
