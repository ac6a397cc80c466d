#include "mowst/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "mowst/csv.hpp"
#include "mowst/error.hpp"
#include "mowst/ot.hpp"
#include "mowst/parallel.hpp"
#include "mowst/rng.hpp"
#include "mowst/symmetric_eigen.hpp"

namespace mowst::graph {

NetworkGraph::NetworkGraph(std::size_t node_count, std::vector<Edge> edges)
    : n_(node_count), edges_(std::move(edges)) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    adj_.assign(n_, {});
    for (const Edge& e : edges_) {
        if (e.u >= n_ || e.v >= n_)
            throw Error(ErrorKind::NodeOutOfRange, "edge endpoint outside [0, n)");
        if (e.u == e.v)
            throw Error(ErrorKind::SelfLoop,
                        "self-loop at node " + std::to_string(e.u));
        if (!(e.weight > 0.0))
            throw Error(ErrorKind::DataError, "edge weight must be positive");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw Error(ErrorKind::DuplicateEdge, "duplicate edge " + std::to_string(e.u) + "," +
                                                      std::to_string(e.v));
        adj_[e.u].emplace_back(e.v, e.weight);
        adj_[e.v].emplace_back(e.u, e.weight);
    }
}

bool NetworkGraph::has_edge(std::size_t u, std::size_t v) const {
    if (u >= n_) return false;
    for (const auto& [w, _] : adj_[u])
        if (w == v) return true;
    return false;
}

double NetworkGraph::weighted_degree(std::size_t u) const {
    double d = 0.0;
    for (const auto& [_, w] : adj_[u]) d += w;
    return d;
}

NetworkGraph NetworkGraph::without_edges(
    const std::vector<std::pair<std::size_t, std::size_t>>& removed) const {
    std::set<std::pair<std::size_t, std::size_t>> drop;
    for (auto [u, v] : removed) {
        if (!has_edge(u, v))
            throw Error(ErrorKind::UnknownEdge,
                        "no edge " + std::to_string(u) + "," + std::to_string(v));
        drop.insert(std::minmax(u, v));
    }
    std::vector<Edge> keep;
    keep.reserve(edges_.size());
    for (const Edge& e : edges_)
        if (!drop.count(std::minmax(e.u, e.v))) keep.push_back(e);
    return NetworkGraph(n_, std::move(keep));
}

NetworkGraph NetworkGraph::without_node(std::size_t u) const {
    if (u >= n_) throw Error(ErrorKind::NodeOutOfRange, "node " + std::to_string(u));
    std::vector<Edge> keep;
    keep.reserve(edges_.size());
    for (const Edge& e : edges_) {
        if (e.u == u || e.v == u) continue;
        Edge shifted = e;
        if (shifted.u > u) --shifted.u;
        if (shifted.v > u) --shifted.v;
        keep.push_back(shifted);
    }
    return NetworkGraph(n_ - 1, std::move(keep));
}

NetworkGraph parse_edge_list(const std::vector<std::vector<std::string>>& rows,
                             const std::string& origin) {
    std::vector<Edge> edges;
    std::size_t max_id = 0;
    bool any = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = origin + " line " + std::to_string(r + 1);
        if (row.size() != 2 && row.size() != 3)
            throw Error(ErrorKind::ParseError, where + ": expected u,v[,weight]");
        long long u = csv::parse_int(row[0], where);
        long long v = csv::parse_int(row[1], where);
        if (u < 0 || v < 0) throw Error(ErrorKind::ParseError, where + ": negative node id");
        Edge e{static_cast<std::size_t>(u), static_cast<std::size_t>(v), 1.0};
        if (row.size() == 3) e.weight = csv::parse_double(row[2], where);
        edges.push_back(e);
        max_id = std::max({max_id, e.u, e.v});
        any = true;
    }
    return NetworkGraph(any ? max_id + 1 : 0, std::move(edges));
}

NetworkGraph load_graph(const std::string& path) {
    return parse_edge_list(csv::read_rows(path), path);
}

std::vector<int> bfs_hop_distances(const NetworkGraph& g, std::size_t source) {
    if (source >= g.node_count())
        throw Error(ErrorKind::NodeOutOfRange, "node " + std::to_string(source));
    std::vector<int> dist(g.node_count(), kUnreachable);
    std::vector<std::size_t> queue = {source};
    dist[source] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        std::size_t u = queue[q];
        for (const auto& [v, _] : g.adjacency()[u]) {
            if (dist[v] == kUnreachable) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

namespace {

std::vector<int> all_pairs_impl(const NetworkGraph& g, bool parallel) {
    const std::size_t n = g.node_count();
    std::vector<int> out(n * n, kUnreachable);
    auto body = [&](std::size_t s) {
        auto d = bfs_hop_distances(g, s);
        std::copy(d.begin(), d.end(), out.begin() + static_cast<long>(s * n));
    };
    if (parallel)
        parallel_for(n, body);
    else
        for (std::size_t s = 0; s < n; ++s) body(s);
    return out;
}

int max_finite(const std::vector<int>& dists) {
    int d = 0;
    for (int x : dists) d = std::max(d, x);
    return d;
}

Histogram distribution_from_counts(const std::vector<double>& count_per_hop, double denom) {
    // count_per_hop[k] holds hop distance k+1.
    std::vector<double> pts, w;
    for (std::size_t k = 0; k < count_per_hop.size(); ++k) {
        pts.push_back(static_cast<double>(k + 1));
        w.push_back(denom > 0.0 ? count_per_hop[k] / denom : 0.0);
    }
    return Histogram::from_1d(pts, w);
}

} // namespace

std::vector<int> all_pairs_hop_distances(const NetworkGraph& g) { return all_pairs_impl(g, true); }
std::vector<int> all_pairs_hop_distances_serial(const NetworkGraph& g) {
    return all_pairs_impl(g, false);
}

Histogram node_distance_distribution(const NetworkGraph& g, std::size_t node) {
    const std::size_t n = g.node_count();
    if (node >= n) throw Error(ErrorKind::NodeOutOfRange, "node " + std::to_string(node));
    auto all = all_pairs_hop_distances(g);
    int diameter = max_finite(all);
    if (n < 2 || diameter == 0) return Histogram{};
    std::vector<double> counts(static_cast<std::size_t>(diameter), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        int d = all[node * n + j];
        if (d > 0) counts[static_cast<std::size_t>(d - 1)] += 1.0;
    }
    return distribution_from_counts(counts, static_cast<double>(n - 1));
}

Histogram graph_distance_distribution(const NetworkGraph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) return Histogram{};
    auto all = all_pairs_hop_distances(g);
    int diameter = max_finite(all);
    if (diameter == 0) return Histogram{};
    std::vector<double> counts(static_cast<std::size_t>(diameter), 0.0);
    for (int d : all)
        if (d > 0) counts[static_cast<std::size_t>(d - 1)] += 1.0;
    return distribution_from_counts(counts, static_cast<double>(n) * static_cast<double>(n - 1));
}

CentralityReport centrality_report(const NetworkGraph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) throw Error(ErrorKind::EmptyGraph, "centrality of the empty graph");
    const std::size_t m = g.edge_count();

    CentralityReport rep;
    rep.density = n > 1 ? 2.0 * static_cast<double>(m) /
                              (static_cast<double>(n) * static_cast<double>(n - 1))
                        : 0.0;
    rep.link_per_node = static_cast<double>(m) / static_cast<double>(n);

    const auto all = all_pairs_hop_distances(g);
    long long reachable_pairs = 0;
    long long dist_sum = 0;
    int diameter = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            int d = all[i * n + j];
            if (d == kUnreachable) {
                rep.connected = false;
            } else {
                ++reachable_pairs;
                dist_sum += d;
                diameter = std::max(diameter, d);
            }
        }
    rep.diameter = diameter;
    rep.characteristic_path_length =
        reachable_pairs > 0 ? static_cast<double>(dist_sum) / static_cast<double>(reachable_pairs)
                            : 0.0;

    // Betweenness: i counts for the ordered pair (s, t) when it sits strictly
    // inside some shortest s-t path, i.e. d(s,i) + d(i,t) == d(s,t).
    rep.betweenness.assign(n, 0.0);
    const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    std::vector<double> bw(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        long long hits = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if (s == i) continue;
            int dsi = all[s * n + i];
            if (dsi == kUnreachable) continue;
            for (std::size_t t = 0; t < n; ++t) {
                if (t == s || t == i) continue;
                int dit = all[i * n + t];
                int dst = all[s * n + t];
                if (dit != kUnreachable && dst != kUnreachable && dsi + dit == dst) ++hits;
            }
        }
        bw[i] = static_cast<double>(hits) * norm;
    });
    rep.betweenness = bw;

    double b_max = *std::max_element(rep.betweenness.begin(), rep.betweenness.end());
    if (n > 1) {
        double acc = 0.0;
        for (double b : rep.betweenness) acc += b_max - b;
        rep.central_point_dominance = acc / static_cast<double>(n - 1);
    }

    // Each triangle closes three of the connected triples.
    long long triples = 0;
    for (std::size_t v = 0; v < n; ++v) {
        long long d = static_cast<long long>(g.adjacency()[v].size());
        triples += d * (d - 1) / 2;
    }
    long long closed = 0; // sum over edges of common neighbours == 3 * triangles
    for (const Edge& e : g.edges()) {
        std::set<std::size_t> nu;
        for (const auto& [w, _] : g.adjacency()[e.u]) nu.insert(w);
        for (const auto& [w, _] : g.adjacency()[e.v])
            if (nu.count(w)) ++closed;
    }
    rep.clustering_coefficient =
        triples > 0 ? static_cast<double>(closed) / static_cast<double>(triples) : 0.0;
    return rep;
}

double efficiency(const NetworkGraph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) return 0.0;
    const auto all = all_pairs_hop_distances(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            int d = all[i * n + j];
            if (d > 0) acc += 1.0 / static_cast<double>(d);
        }
    return acc / (static_cast<double>(n) * static_cast<double>(n - 1));
}

namespace {

std::vector<double> removal_efficiencies_impl(const NetworkGraph& g, bool parallel) {
    const std::size_t n = g.node_count();
    std::vector<double> out(n, 0.0);
    auto body = [&](std::size_t v) { out[v] = efficiency(g.without_node(v)); };
    if (parallel)
        parallel_for(n, body);
    else
        for (std::size_t v = 0; v < n; ++v) body(v);
    return out;
}

} // namespace

std::vector<double> node_removal_efficiencies(const NetworkGraph& g) {
    return removal_efficiencies_impl(g, true);
}
std::vector<double> node_removal_efficiencies_serial(const NetworkGraph& g) {
    return removal_efficiencies_impl(g, false);
}

double loss_of_efficiency(double e_base, double e_removed) {
    if (e_base <= 0.0) return 0.0;
    return 1.0 - e_removed / e_base;
}

double loss_of_efficiency(const NetworkGraph& g,
                          const std::vector<std::pair<std::size_t, std::size_t>>& removed_edges) {
    return loss_of_efficiency(efficiency(g), efficiency(g.without_edges(removed_edges)));
}

double efficiency_ratio(double e_base, double e_removed) {
    if (e_removed <= 0.0) return std::numeric_limits<double>::infinity();
    return e_base / e_removed;
}

VulnerabilityReport vulnerability_report(const NetworkGraph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) throw Error(ErrorKind::EmptyGraph, "vulnerability needs at least two nodes");

    VulnerabilityReport rep;
    rep.efficiency = efficiency(g);
    const auto removed = node_removal_efficiencies(g);

    double drop_max = 0.0, drop_sum = 0.0;
    double ratio_max = 0.0, ratio_sum = 0.0;
    for (double e : removed) {
        double drop = loss_of_efficiency(rep.efficiency, e);
        double ratio = efficiency_ratio(rep.efficiency, e);
        drop_max = std::max(drop_max, drop);
        drop_sum += drop;
        ratio_max = std::max(ratio_max, ratio);
        ratio_sum += ratio;
    }
    rep.v_max = drop_max;
    rep.v_mean = drop_sum / static_cast<double>(n);
    rep.v_max_ratio = ratio_max;
    rep.v_mean_ratio = ratio_sum / static_cast<double>(n);

    // Combinatorial Laplacian D - W (unit weights when none are given).
    std::vector<double> lap(n * n, 0.0);
    for (const Edge& e : g.edges()) {
        lap[e.u * n + e.v] -= e.weight;
        lap[e.v * n + e.u] -= e.weight;
        lap[e.u * n + e.u] += e.weight;
        lap[e.v * n + e.v] += e.weight;
    }
    auto dec = jacobi_eigen_symmetric(std::move(lap), n);
    double lambda2 = dec.values.size() > 1 ? dec.values[1] : 0.0;
    rep.algebraic_connectivity = lambda2 < 1e-9 ? 0.0 : lambda2;
    return rep;
}

EdgeRemovalImpact edge_removal_impact(
    const NetworkGraph& g, const std::vector<std::pair<std::size_t, std::size_t>>& removed) {
    EdgeRemovalImpact out;
    double e_base = efficiency(g);
    out.efficiency_removed = efficiency(g.without_edges(removed));
    out.loss = loss_of_efficiency(e_base, out.efficiency_removed);
    out.ratio = efficiency_ratio(e_base, out.efficiency_removed);
    return out;
}

namespace {

// Hop distributions of two graphs padded onto the common support
// {1..max(D1, D2)} and renormalized (disconnection leaves mass < 1).
std::pair<Histogram, Histogram> padded_pair(const Histogram& a, const Histogram& b) {
    std::size_t k = std::max(a.size(), b.size());
    auto pad = [&](const Histogram& h) {
        std::vector<double> pts(k), w(k, 0.0);
        for (std::size_t i = 0; i < k; ++i) pts[i] = static_cast<double>(i + 1);
        for (std::size_t i = 0; i < h.size(); ++i) w[i] = h.weights[i];
        return Histogram::from_1d(pts, w);
    };
    return {pad(a).normalized(), pad(b).normalized()};
}

double distribution_distance(const Histogram& a, const Histogram& b, CriticalityMetric metric) {
    if (a.size() == 0 || b.size() == 0 || a.total_mass() <= 0.0 || b.total_mass() <= 0.0)
        return std::numeric_limits<double>::infinity(); // removal erased all structure
    auto [pa, pb] = padded_pair(a, b);
    if (metric == CriticalityMetric::Wasserstein) return ot::wasserstein_1d(pa, pb);
    return ot::js_metric(pa, pb);
}

std::vector<double> criticality_impl(const NetworkGraph& g, CriticalityMetric metric,
                                     bool parallel) {
    const Histogram base = graph_distance_distribution(g);
    const auto& edges = g.edges();
    std::vector<double> out(edges.size(), 0.0);
    auto body = [&](std::size_t e) {
        NetworkGraph cut = g.without_edges({{edges[e].u, edges[e].v}});
        out[e] = distribution_distance(base, graph_distance_distribution(cut), metric);
    };
    if (parallel)
        parallel_for(edges.size(), body);
    else
        for (std::size_t e = 0; e < edges.size(); ++e) body(e);
    return out;
}

} // namespace

double graph_distribution_distance(const NetworkGraph& a, const NetworkGraph& b,
                                   CriticalityMetric metric) {
    return distribution_distance(graph_distance_distribution(a), graph_distance_distribution(b),
                                 metric);
}

std::vector<double> edge_criticality_map(const NetworkGraph& g, CriticalityMetric metric) {
    return criticality_impl(g, metric, true);
}
std::vector<double> edge_criticality_map_serial(const NetworkGraph& g, CriticalityMetric metric) {
    return criticality_impl(g, metric, false);
}

std::vector<std::size_t> connected_components(const NetworkGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::size_t> comp(n, SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != SIZE_MAX) continue;
        comp[s] = next;
        std::vector<std::size_t> queue = {s};
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (const auto& [v, _] : g.adjacency()[queue[q]])
                if (comp[v] == SIZE_MAX) {
                    comp[v] = next;
                    queue.push_back(v);
                }
        ++next;
    }
    return comp;
}

namespace {

// Plain seeded k-means on embedding rows: k-means++ initialization, Lloyd
// iterations, ties to the lowest center index.
std::vector<std::size_t> kmeans_rows(const std::vector<double>& rows, std::size_t n,
                                     std::size_t dim, std::size_t k, Rng& rng) {
    auto sq_dist = [&](std::size_t i, const std::vector<double>& center) {
        double s = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            double diff = rows[i * dim + d] - center[d];
            s += diff * diff;
        }
        return s;
    };

    std::vector<std::vector<double>> centers;
    std::vector<char> chosen(n, 0);
    std::size_t first = static_cast<std::size_t>(rng.index(n));
    chosen[first] = 1;
    centers.push_back({rows.begin() + static_cast<long>(first * dim),
                       rows.begin() + static_cast<long>((first + 1) * dim)});
    while (centers.size() < k) {
        std::vector<double> d2(n);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centers) best = std::min(best, sq_dist(i, c));
            d2[i] = best;
            total += best;
        }
        std::size_t pick = n;
        if (total > 0.0) {
            double r = rng.real01() * total, acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (r <= acc) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) pick = n - 1;
        } else {
            // all remaining points coincide with a center: take the first free one
            for (std::size_t i = 0; i < n; ++i)
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            if (pick == n) pick = 0;
        }
        chosen[pick] = 1;
        centers.push_back({rows.begin() + static_cast<long>(pick * dim),
                           rows.begin() + static_cast<long>((pick + 1) * dim)});
    }

    std::vector<std::size_t> assign(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<std::size_t> next(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t bc = 0;
            for (std::size_t c = 0; c < k; ++c) {
                double d = sq_dist(i, centers[c]);
                if (d < best) {
                    best = d;
                    bc = c;
                }
            }
            next[i] = bc;
        }
        bool stable = iter > 0 && next == assign;
        assign = next;
        if (stable) break;
        for (std::size_t c = 0; c < k; ++c) {
            std::vector<double> mean(dim, 0.0);
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (assign[i] == c) {
                    ++cnt;
                    for (std::size_t d = 0; d < dim; ++d) mean[d] += rows[i * dim + d];
                }
            if (cnt > 0) {
                for (double& x : mean) x /= static_cast<double>(cnt);
                centers[c] = mean;
            }
        }
    }
    return assign;
}

std::vector<std::size_t> relabel_by_first_occurrence(std::vector<std::size_t> labels) {
    std::vector<long> remap(labels.size() + 1, -1);
    std::size_t next = 0;
    for (auto& l : labels) {
        if (remap[l] < 0) remap[l] = static_cast<long>(next++);
        l = static_cast<std::size_t>(remap[l]);
    }
    return labels;
}

} // namespace

std::vector<std::size_t> spectral_clustering(const NetworkGraph& g, std::size_t k,
                                             std::uint64_t seed) {
    const std::size_t n = g.node_count();
    if (k == 0 || k > n) throw Error(ErrorKind::KTooLarge, "need 1 <= k <= node count");
    if (k == 1) return std::vector<std::size_t>(n, 0);

    // Similarity S = I + A normalized by its own row sums: the component
    // indicator space is exactly the top-k eigenspace, so clustering with
    // k = #components recovers them.
    std::vector<double> m(n * n, 0.0);
    std::vector<double> dinv(n);
    for (std::size_t i = 0; i < n; ++i) {
        double rowsum = 1.0 + g.weighted_degree(i);
        dinv[i] = rowsum > 0.0 ? 1.0 / std::sqrt(rowsum) : 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = dinv[i] * dinv[i];
    for (const Edge& e : g.edges()) {
        double val = e.weight * dinv[e.u] * dinv[e.v];
        m[e.u * n + e.v] += val;
        m[e.v * n + e.u] += val;
    }

    auto dec = jacobi_eigen_symmetric(std::move(m), n);

    // Embed into the k leading eigenvectors, row-normalized.
    std::vector<double> rows(n * k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t col = n - 1 - c;
        for (std::size_t i = 0; i < n; ++i) rows[i * k + c] = dec.vector_at(i, col);
    }
    for (std::size_t i = 0; i < n; ++i) {
        double norm = 0.0;
        for (std::size_t c = 0; c < k; ++c) norm += rows[i * k + c] * rows[i * k + c];
        norm = std::sqrt(norm);
        if (norm > 1e-12)
            for (std::size_t c = 0; c < k; ++c) rows[i * k + c] /= norm;
    }

    Rng rng(seed);
    return relabel_by_first_occurrence(kmeans_rows(rows, n, k, k, rng));
}

} // namespace mowst::graph
