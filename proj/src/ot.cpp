#include "mowst/ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mowst/error.hpp"
#include "mowst/lp.hpp"
#include "mowst/parallel.hpp"
#include "mowst/rng.hpp"

namespace mowst::ot {
namespace {

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

std::vector<double> build_cost_matrix(const Histogram& p1, const Histogram& p2,
                                      const GroundMetric& ground) {
    const std::size_t m1 = p1.size(), m2 = p2.size();
    std::vector<double> cost(m1 * m2);
    if (ground.kind == GroundMetric::Kind::Matrix) {
        if (ground.rows != m1 || ground.cols != m2)
            throw Error(ErrorKind::ShapeMismatch, "cost matrix shape does not match supports");
        return ground.matrix;
    }
    if (p1.dimension() != p2.dimension())
        throw Error(ErrorKind::DimensionError, "histograms live in different dimensions");
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < m2; ++j) {
            double d = euclidean_distance(p1.support[i], p2.support[j]);
            cost[i * m2 + j] = ground.p_exponent == 1.0 ? d : std::pow(d, ground.p_exponent);
        }
    return cost;
}

// Transportation simplex on the dense bipartite problem. Supplies and
// demands are strictly positive (callers prune zero-weight bins). Bland's
// entering/leaving rules keep degenerate pivots from cycling.
struct TransportSolver {
    std::size_t m1, m2;
    const std::vector<double>& cost; // m1 x m2
    std::vector<double> supply, demand;

    struct Cell {
        std::size_t i, j;
        double flow;
    };
    std::vector<Cell> basis;                       // exactly m1 + m2 - 1 cells
    std::vector<std::vector<std::size_t>> adj;     // node -> basis cell ids (rows 0..m1-1, cols m1..)
    std::vector<double> u, v;

    TransportSolver(std::size_t m1_, std::size_t m2_, const std::vector<double>& cost_,
                    std::vector<double> supply_, std::vector<double> demand_)
        : m1(m1_), m2(m2_), cost(cost_), supply(std::move(supply_)), demand(std::move(demand_)) {}

    void northwest_corner() {
        std::vector<double> a = supply, b = demand;
        std::size_t i = 0, j = 0;
        for (;;) {
            double f = std::min(a[i], b[j]);
            basis.push_back({i, j, f});
            a[i] -= f;
            b[j] -= f;
            if (i == m1 - 1 && j == m2 - 1) break;
            if ((a[i] <= b[j] && i < m1 - 1) || j == m2 - 1)
                ++i;
            else
                ++j;
        }
    }

    void rebuild_adjacency() {
        adj.assign(m1 + m2, {});
        for (std::size_t c = 0; c < basis.size(); ++c) {
            adj[basis[c].i].push_back(c);
            adj[m1 + basis[c].j].push_back(c);
        }
    }

    void compute_potentials() {
        u.assign(m1, 0.0);
        v.assign(m2, 0.0);
        std::vector<char> seen(m1 + m2, 0);
        std::vector<std::size_t> stack = {0};
        seen[0] = 1;
        while (!stack.empty()) {
            std::size_t node = stack.back();
            stack.pop_back();
            for (std::size_t cid : adj[node]) {
                const Cell& c = basis[cid];
                std::size_t other = node < m1 ? m1 + c.j : c.i;
                if (seen[other]) continue;
                seen[other] = 1;
                if (other >= m1)
                    v[c.j] = cost[c.i * m2 + c.j] - u[c.i];
                else
                    u[c.i] = cost[c.i * m2 + c.j] - v[c.j];
                stack.push_back(other);
            }
        }
    }

    // Tree path between the entering cell's endpoints; returns basis cell ids.
    std::vector<std::size_t> tree_path(std::size_t from, std::size_t to) {
        std::vector<long> parent_cell(m1 + m2, -1);
        std::vector<long> parent_node(m1 + m2, -1);
        std::vector<char> seen(m1 + m2, 0);
        std::vector<std::size_t> queue = {from};
        seen[from] = 1;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            std::size_t node = queue[q];
            if (node == to) break;
            for (std::size_t cid : adj[node]) {
                const Cell& c = basis[cid];
                std::size_t other = node < m1 ? m1 + c.j : c.i;
                if (seen[other]) continue;
                seen[other] = 1;
                parent_cell[other] = static_cast<long>(cid);
                parent_node[other] = static_cast<long>(node);
                queue.push_back(other);
            }
        }
        std::vector<std::size_t> path;
        for (long node = static_cast<long>(to); node != static_cast<long>(from);
             node = parent_node[node]) {
            path.push_back(static_cast<std::size_t>(parent_cell[node]));
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    void solve() {
        northwest_corner();
        rebuild_adjacency();
        double scale = 1.0;
        for (double c : cost) scale = std::max(scale, std::abs(c));
        const double eps = 1e-11 * scale;
        const long max_iter = 200000;

        for (long iter = 0; iter < max_iter; ++iter) {
            compute_potentials();

            // Bland: first cell in row-major order with negative reduced cost.
            std::size_t ei = m1, ej = m2;
            bool found = false;
            for (std::size_t i = 0; i < m1 && !found; ++i)
                for (std::size_t j = 0; j < m2; ++j) {
                    if (cost[i * m2 + j] - u[i] - v[j] < -eps) {
                        ei = i;
                        ej = j;
                        found = true;
                        break;
                    }
                }
            if (!found) return; // optimal

            auto path = tree_path(ei, m1 + ej);
            // Signs alternate along the cycle; the entering cell takes +theta
            // and the first path edge (sharing the entering row) takes -theta.
            double theta = std::numeric_limits<double>::infinity();
            std::size_t leave_pos = 0;
            for (std::size_t t = 0; t < path.size(); t += 2) {
                const Cell& c = basis[path[t]];
                if (c.flow < theta ||
                    (c.flow == theta &&
                     basis[path[t]].i * m2 + basis[path[t]].j <
                         basis[path[leave_pos]].i * m2 + basis[path[leave_pos]].j)) {
                    theta = c.flow;
                    leave_pos = t;
                }
            }
            for (std::size_t t = 0; t < path.size(); ++t) {
                if (t % 2 == 0)
                    basis[path[t]].flow -= theta;
                else
                    basis[path[t]].flow += theta;
            }
            std::size_t leaving = path[leave_pos];
            basis[leaving] = {ei, ej, theta};
            rebuild_adjacency();
        }
        throw std::runtime_error("transportation simplex iteration limit exceeded");
    }
};

} // namespace

GroundMetric GroundMetric::cost_matrix(std::size_t m1, std::size_t m2,
                                       std::vector<double> entries) {
    if (entries.size() != m1 * m2)
        throw Error(ErrorKind::ShapeMismatch, "cost matrix entries do not match m1*m2");
    GroundMetric g;
    g.kind = Kind::Matrix;
    g.rows = m1;
    g.cols = m2;
    g.matrix = std::move(entries);
    return g;
}

double TransportPlan::row_sum(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < m2; ++j) s += gamma[i * m2 + j];
    return s;
}

double TransportPlan::col_sum(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < m1; ++i) s += gamma[i * m2 + j];
    return s;
}

TransportPlan emd_lp(const Histogram& p1, const Histogram& p2, const GroundMetric& ground) {
    if (p1.size() == 0 || p2.size() == 0)
        throw Error(ErrorKind::EmptyHistogram, "emd_lp requires non-empty supports");
    const double mass1 = p1.total_mass(), mass2 = p2.total_mass();
    if (std::abs(mass1 - mass2) > 1e-9)
        throw Error(ErrorKind::MassMismatch, "histogram masses differ beyond 1e-9");

    const std::size_t m1 = p1.size(), m2 = p2.size();
    std::vector<double> cost = build_cost_matrix(p1, p2, ground);

    TransportPlan plan;
    plan.m1 = m1;
    plan.m2 = m2;
    plan.gamma.assign(m1 * m2, 0.0);
    if (mass1 <= 0.0) return plan; // zero-mass histograms transport nothing

    // Solve on the strictly positive bins only; zero bins keep zero flow.
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < m1; ++i)
        if (p1.weights[i] > 0.0) rows.push_back(i);
    for (std::size_t j = 0; j < m2; ++j)
        if (p2.weights[j] > 0.0) cols.push_back(j);

    std::vector<double> supply, demand, sub_cost(rows.size() * cols.size());
    supply.reserve(rows.size());
    demand.reserve(cols.size());
    for (std::size_t i : rows) supply.push_back(p1.weights[i]);
    for (std::size_t j : cols) demand.push_back(p2.weights[j]);
    // Absorb the (<= 1e-9) mass discrepancy into the largest demand so the
    // balance is exact and no demand can be pushed negative.
    double diff = std::accumulate(supply.begin(), supply.end(), 0.0) -
                  std::accumulate(demand.begin(), demand.end(), 0.0);
    *std::max_element(demand.begin(), demand.end()) += diff;
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            sub_cost[a * cols.size() + b] = cost[rows[a] * m2 + cols[b]];

    TransportSolver solver(rows.size(), cols.size(), sub_cost, supply, demand);
    solver.solve();

    double objective = 0.0;
    for (const auto& c : solver.basis) {
        if (c.flow <= 0.0) continue;
        plan.gamma[rows[c.i] * m2 + cols[c.j]] = c.flow;
        objective += c.flow * sub_cost[c.i * cols.size() + c.j];
    }
    plan.cost = objective;
    if (ground.kind == GroundMetric::Kind::Euclidean && ground.p_exponent != 1.0)
        plan.cost = std::pow(std::max(0.0, objective), 1.0 / ground.p_exponent);
    if (plan.cost < 0.0) plan.cost = 0.0;
    return plan;
}

double wasserstein_1d(const Histogram& p1, const Histogram& p2, double p_exp) {
    if (p1.dimension() != 1 || p2.dimension() != 1)
        throw Error(ErrorKind::DimensionError, "wasserstein_1d requires scalar supports");
    if (p1.size() == 0 || p2.size() == 0)
        throw Error(ErrorKind::EmptyHistogram, "wasserstein_1d requires non-empty supports");
    const double mass1 = p1.total_mass(), mass2 = p2.total_mass();
    if (std::abs(mass1 - mass2) > 1e-9)
        throw Error(ErrorKind::MassMismatch, "histogram masses differ beyond 1e-9");
    if (mass1 <= 0.0) return 0.0;

    auto sorted_order = [](const Histogram& h) {
        std::vector<std::size_t> idx(h.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return h.support[a][0] < h.support[b][0]; });
        return idx;
    };
    const auto o1 = sorted_order(p1), o2 = sorted_order(p2);

    // Walk the merged quantile levels; between levels both quantile functions
    // are constant.
    std::size_t i = 0, j = 0;
    double c1 = 0.0, c2 = 0.0, q_prev = 0.0, total = 0.0;
    while (i < o1.size() && j < o2.size()) {
        double lvl1 = c1 + p1.weights[o1[i]];
        double lvl2 = c2 + p2.weights[o2[j]];
        double q = std::min(lvl1, lvl2);
        double seg = q - q_prev;
        if (seg > 0.0) {
            double gap = std::abs(p1.support[o1[i]][0] - p2.support[o2[j]][0]);
            total += seg * (p_exp == 1.0 ? gap : std::pow(gap, p_exp));
        }
        q_prev = q;
        if (lvl1 <= lvl2) {
            c1 = lvl1;
            ++i;
        }
        if (lvl2 <= lvl1) {
            c2 = lvl2;
            ++j;
        }
    }
    return p_exp == 1.0 ? total : std::pow(total, 1.0 / p_exp);
}

double wasserstein(const Histogram& p1, const Histogram& p2) {
    if (p1.dimension() == 1 && p2.dimension() == 1) return wasserstein_1d(p1, p2);
    return emd_lp(p1, p2).cost;
}

Histogram barycenter_fixed_support(const std::vector<Histogram>& ps, std::vector<double> lambdas) {
    if (ps.empty()) throw Error(ErrorKind::EmptyInput, "no histograms given");
    const std::size_t n = ps.size();
    for (const auto& h : ps)
        if (!h.is_normalized())
            throw Error(ErrorKind::MassMismatch, "barycenter inputs must be normalized");
    for (std::size_t k = 1; k < n; ++k)
        if (!ps[0].same_support(ps[k]))
            throw Error(ErrorKind::SupportMismatch, "histograms must share the identical support");
    if (lambdas.empty()) lambdas.assign(n, 1.0 / static_cast<double>(n));
    if (lambdas.size() != n)
        throw Error(ErrorKind::LengthMismatch, "one lambda per histogram required");
    double lsum = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
    if (std::abs(lsum - 1.0) > 1e-9)
        throw Error(ErrorKind::MassMismatch, "lambdas must sum to 1");
    if (n == 1) return ps[0];
    bool all_equal = true;
    for (std::size_t k = 1; k < n && all_equal; ++k)
        for (std::size_t i = 0; i < ps[0].size(); ++i)
            if (ps[k].weights[i] != ps[0].weights[i]) {
                all_equal = false;
                break;
            }
    if (all_equal) return ps[0];

    // Squared-Euclidean transport cost: the Frechet-mean convention. With a
    // plain p=1 cost the minimizer is a weighted median and the program is
    // massively degenerate (any point between two inputs is optimal).
    const std::size_t m = ps[0].size();
    std::vector<double> dist(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double d = euclidean_distance(ps[0].support[i], ps[0].support[j]);
            dist[i * m + j] = d * d;
        }

    // Variables: w (m), then gamma^k (m x m) per input. Constraints per k:
    //   sum_j gamma^k_ij - w_i = 0   (couples every plan to the barycenter)
    //   sum_i gamma^k_ij = w^k_j
    lp::Program prog;
    prog.cols = m + n * m * m;
    prog.rows = 2 * n * m;
    prog.a.assign(prog.rows * prog.cols, 0.0);
    prog.b.assign(prog.rows, 0.0);
    prog.c.assign(prog.cols, 0.0);

    auto gamma_var = [&](std::size_t k, std::size_t i, std::size_t j) {
        return m + k * m * m + i * m + j;
    };
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t row = 2 * k * m + i;
            prog.at(row, i) = -1.0;
            for (std::size_t j = 0; j < m; ++j) prog.at(row, gamma_var(k, i, j)) = 1.0;
        }
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t row = 2 * k * m + m + j;
            for (std::size_t i = 0; i < m; ++i) prog.at(row, gamma_var(k, i, j)) = 1.0;
            prog.b[row] = ps[k].weights[j];
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                prog.c[gamma_var(k, i, j)] = lambdas[k] * dist[i * m + j];
    }

    lp::Solution sol = lp::solve(prog);
    if (!sol.feasible)
        throw std::runtime_error("barycenter LP unexpectedly infeasible");

    Histogram out;
    out.support = ps[0].support;
    out.weights.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(m));
    for (double& w : out.weights)
        if (w < 0.0) w = 0.0;
    return out;
}

KmeansResult wst_kmeans_detailed(const std::vector<Histogram>& ps, std::size_t k,
                                 std::size_t max_iter, std::uint64_t seed) {
    const std::size_t n = ps.size();
    if (k == 0 || k > n) throw Error(ErrorKind::KTooLarge, "need 1 <= k <= number of histograms");
    for (std::size_t i = 1; i < n; ++i)
        if (!ps[0].same_support(ps[i]))
            throw Error(ErrorKind::SupportMismatch, "histograms must share the identical support");

    // Squared W2 cost, matching the barycenter objective so each Lloyd step
    // (assign, then re-fit) is non-increasing in the recorded objective.
    const bool one_dim = ps[0].dimension() == 1;
    auto distance = [&](const Histogram& a, const Histogram& b) {
        if (one_dim) {
            double w2 = wasserstein_1d(a, b, 2.0);
            return w2 * w2;
        }
        double w2 = emd_lp(a, b, GroundMetric::euclidean(2.0)).cost;
        return w2 * w2;
    };

    Rng rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    KmeansResult res;
    res.barycenters.reserve(k);
    for (std::size_t c = 0; c < k; ++c) res.barycenters.push_back(ps[order[c]]);
    res.assignments.assign(n, 0);

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::vector<std::size_t> next(n, 0);
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_c = 0;
            for (std::size_t c = 0; c < k; ++c) {
                double d = distance(ps[i], res.barycenters[c]);
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            next[i] = best_c;
            objective += best;
        }
        res.objective_history.push_back(objective);
        bool stable = iter > 0 && next == res.assignments;
        res.assignments = next;
        res.iterations = iter + 1;
        if (stable) break;

        for (std::size_t c = 0; c < k; ++c) {
            std::vector<Histogram> members;
            for (std::size_t i = 0; i < n; ++i)
                if (res.assignments[i] == c) members.push_back(ps[i]);
            if (!members.empty()) res.barycenters[c] = barycenter_fixed_support(members);
        }
    }
    return res;
}

std::vector<std::size_t> wst_kmeans(const std::vector<Histogram>& ps, std::size_t k,
                                    std::size_t max_iter, std::uint64_t seed) {
    return wst_kmeans_detailed(ps, k, max_iter, seed).assignments;
}

namespace {

double kl_against_mixture(const Histogram& p, const Histogram& q) {
    if (!p.same_support(q))
        throw Error(ErrorKind::SupportMismatch, "divergences require a shared support");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double pi = p.weights[i], qi = q.weights[i];
        if (pi <= 0.0) continue;
        acc += pi * std::log2(2.0 * pi / (pi + qi));
    }
    return acc;
}

} // namespace

double kl_divergence(const Histogram& p, const Histogram& q) { return kl_against_mixture(p, q); }

double js_divergence(const Histogram& p, const Histogram& q) {
    return 0.5 * kl_against_mixture(p, q) + 0.5 * kl_against_mixture(q, p);
}

double js_metric(const Histogram& p, const Histogram& q) {
    double js = js_divergence(p, q);
    if (js < 0.0) js = 0.0;
    return std::sqrt(js);
}

namespace {

std::vector<double> pairwise_impl(const std::vector<Histogram>& hs, bool parallel) {
    const std::size_t n = hs.size();
    std::vector<double> out(n * n, 0.0);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    auto body = [&](std::size_t t) {
        auto [i, j] = pairs[t];
        double d = wasserstein_1d(hs[i], hs[j]);
        out[i * n + j] = d;
        out[j * n + i] = d;
    };
    if (parallel)
        parallel_for(pairs.size(), body);
    else
        for (std::size_t t = 0; t < pairs.size(); ++t) body(t);
    return out;
}

} // namespace

std::vector<double> pairwise_wasserstein_1d(const std::vector<Histogram>& hs) {
    return pairwise_impl(hs, true);
}

std::vector<double> pairwise_wasserstein_1d_serial(const std::vector<Histogram>& hs) {
    return pairwise_impl(hs, false);
}

} // namespace mowst::ot
