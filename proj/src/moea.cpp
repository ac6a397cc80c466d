#include "mowst/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "mowst/error.hpp"

namespace mowst::moea {

bool dominates(const ObjectiveVector& u, const ObjectiveVector& v) {
    if (u.size() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "objective vectors of different size");
    bool strict = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] > v[i]) return false;
        if (u[i] < v[i]) strict = true;
    }
    return strict;
}

bool weakly_dominates(const ObjectiveVector& u, const ObjectiveVector& v) {
    if (u.size() != v.size())
        throw Error(ErrorKind::DimensionMismatch, "objective vectors of different size");
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > v[i]) return false;
    return true;
}

bool constrained_dominates(const ObjectiveVector& u, double cv_u, const ObjectiveVector& v,
                           double cv_v) {
    if (cv_u < cv_v) return true;
    if (cv_u > cv_v) return false;
    return dominates(u, v);
}

namespace {

FrontPartition sort_by(const std::vector<ObjectiveVector>& objs,
                       const std::vector<double>* cv) {
    const std::size_t n = objs.size();
    FrontPartition part;
    part.crowding.assign(n, 0.0);
    if (n == 0) return part;

    auto dom = [&](std::size_t a, std::size_t b) {
        if (cv) return constrained_dominates(objs[a], (*cv)[a], objs[b], (*cv)[b]);
        return dominates(objs[a], objs[b]);
    };

    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> count(n, 0);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dom(p, q))
                dominated[p].push_back(q);
            else if (dom(q, p))
                ++count[p];
        }

    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p)
        if (count[p] == 0) current.push_back(p);
    while (!current.empty()) {
        part.fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t p : current)
            for (std::size_t q : dominated[p])
                if (--count[q] == 0) next.push_back(q);
        std::sort(next.begin(), next.end()); // stable by input order
        current = std::move(next);
    }

    for (const auto& front : part.fronts) {
        std::vector<ObjectiveVector> fobjs;
        fobjs.reserve(front.size());
        for (std::size_t idx : front) fobjs.push_back(objs[idx]);
        auto cd = crowding_distance(fobjs);
        for (std::size_t i = 0; i < front.size(); ++i) part.crowding[front[i]] = cd[i];
    }
    return part;
}

} // namespace

FrontPartition non_dominated_sort(const std::vector<ObjectiveVector>& objectives) {
    return sort_by(objectives, nullptr);
}

FrontPartition non_dominated_sort(const std::vector<Individual>& population) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(population.size());
    for (const auto& ind : population) {
        if (!ind.evaluated)
            throw Error(ErrorKind::UnevaluatedIndividual, "individual lacks objectives");
        objs.push_back(ind.objectives);
    }
    return sort_by(objs, nullptr);
}

FrontPartition constrained_non_dominated_sort(const std::vector<ObjectiveVector>& objs,
                                              const std::vector<double>& cv) {
    return sort_by(objs, &cv);
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
    const std::size_t n = front.size();
    const double inf = std::numeric_limits<double>::infinity();
    if (n == 0) return {};
    if (n <= 2) return std::vector<double>(n, inf);

    const std::size_t m = front.front().size();
    std::vector<double> cd(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (front[a][j] != front[b][j]) return front[a][j] < front[b][j];
            return a < b;
        });
        double max_fj = front[idx[0]][j];
        for (std::size_t i = 1; i < n; ++i) max_fj = std::max(max_fj, front[idx[i]][j]);

        cd[idx[0]] = inf;
        cd[idx[n - 1]] = inf;
        if (max_fj == 0.0) continue; // degenerate objective, term skipped
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (cd[idx[i]] == inf) continue;
            cd[idx[i]] += (front[idx[i + 1]][j] - front[idx[i - 1]][j]) / max_fj;
        }
    }
    return cd;
}

namespace {

double hypervolume_2d(std::vector<ObjectiveVector> pts, double r1, double r2) {
    if (pts.empty()) return 0.0;
    std::sort(pts.begin(), pts.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
        if (a[0] != b[0]) return a[0] < b[0];
        return a[1] < b[1];
    });
    // Keep the staircase: strictly decreasing f2 as f1 grows.
    std::vector<ObjectiveVector> stairs;
    for (const auto& p : pts)
        if (stairs.empty() || p[1] < stairs.back()[1]) stairs.push_back(p);
    double hv = 0.0;
    for (std::size_t i = 0; i < stairs.size(); ++i) {
        double next_x = i + 1 < stairs.size() ? stairs[i + 1][0] : r1;
        hv += (next_x - stairs[i][0]) * (r2 - stairs[i][1]);
    }
    return hv;
}

} // namespace

double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& reference) {
    const std::size_t m = reference.size();
    if (m != 2 && m != 3)
        throw Error(ErrorKind::UnsupportedDimension, "hypervolume supports 2 or 3 objectives");
    std::vector<ObjectiveVector> pts;
    for (const auto& p : front) {
        if (p.size() != m)
            throw Error(ErrorKind::DimensionMismatch, "front point size differs from reference");
        bool inside = true;
        for (std::size_t j = 0; j < m; ++j)
            if (p[j] > reference[j]) inside = false;
        if (inside) pts.push_back(p);
    }
    if (pts.empty()) return 0.0;

    if (m == 2) return hypervolume_2d(std::move(pts), reference[0], reference[1]);

    // Dimension sweep over z: between consecutive z-levels the dominated area
    // in the (x, y) plane is constant.
    std::vector<double> zs;
    for (const auto& p : pts) zs.push_back(p[2]);
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

    double hv = 0.0;
    for (std::size_t t = 0; t < zs.size(); ++t) {
        double z_lo = zs[t];
        double z_hi = t + 1 < zs.size() ? zs[t + 1] : reference[2];
        std::vector<ObjectiveVector> slab;
        for (const auto& p : pts)
            if (p[2] <= z_lo) slab.push_back({p[0], p[1]});
        hv += hypervolume_2d(std::move(slab), reference[0], reference[1]) * (z_hi - z_lo);
    }
    return hv;
}

double coverage_metric(const std::vector<ObjectiveVector>& a,
                       const std::vector<ObjectiveVector>& b) {
    if (b.empty()) throw Error(ErrorKind::EmptyFront, "coverage over an empty front");
    std::size_t covered = 0;
    for (const auto& q : b)
        for (const auto& p : a)
            if (weakly_dominates(p, q)) {
                ++covered;
                break;
            }
    return static_cast<double>(covered) / static_cast<double>(b.size());
}

double strict_coverage(const std::vector<ObjectiveVector>& a,
                       const std::vector<ObjectiveVector>& b) {
    if (b.empty()) throw Error(ErrorKind::EmptyFront, "coverage over an empty front");
    std::size_t covered = 0;
    for (const auto& q : b)
        for (const auto& p : a)
            if (dominates(p, q)) {
                ++covered;
                break;
            }
    return static_cast<double>(covered) / static_cast<double>(b.size());
}

double weighted_sum_scalarize(const ObjectiveVector& f, const std::vector<double>& lambda) {
    if (f.size() != lambda.size())
        throw Error(ErrorKind::DimensionMismatch, "lambda size differs from objective count");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += lambda[i] * f[i];
    return acc;
}

double chebyshev_scalarize(const ObjectiveVector& f, const std::vector<double>& lambda,
                           const ObjectiveVector& z_star) {
    if (f.size() != lambda.size() || f.size() != z_star.size())
        throw Error(ErrorKind::DimensionMismatch, "mismatched scalarization inputs");
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        best = std::max(best, lambda[i] * std::abs(f[i] - z_star[i]));
    return best;
}

WeightVectorSet build_weight_vectors(std::size_t n, std::size_t m, std::size_t t) {
    if (m != 2 && m != 3)
        throw Error(ErrorKind::UnsupportedDimension, "weight lattices for 2 or 3 objectives");
    if (n < m) throw Error(ErrorKind::NTooSmall, "need at least m weight vectors");
    if (t < 1 || t > n)
        throw Error(ErrorKind::ConfigError, "neighborhood size must be in [1, N]");

    WeightVectorSet set;
    set.t = t;
    if (m == 2) {
        for (std::size_t i = 0; i < n; ++i) {
            double x = static_cast<double>(i) / static_cast<double>(n - 1);
            set.vectors.push_back({x, 1.0 - x});
        }
    } else {
        std::size_t h = 1;
        while ((h + 1) * (h + 2) / 2 < n) ++h;
        for (std::size_t i = 0; i <= h && set.vectors.size() < n; ++i)
            for (std::size_t j = 0; i + j <= h && set.vectors.size() < n; ++j) {
                double hd = static_cast<double>(h);
                set.vectors.push_back({static_cast<double>(i) / hd, static_cast<double>(j) / hd,
                                       static_cast<double>(h - i - j) / hd});
            }
    }

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            double da = 0.0, db = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                da += (set.vectors[a][k] - set.vectors[i][k]) * (set.vectors[a][k] - set.vectors[i][k]);
                db += (set.vectors[b][k] - set.vectors[i][k]) * (set.vectors[b][k] - set.vectors[i][k]);
            }
            if (da != db) return da < db;
            return a < b;
        });
        set.neighborhoods.emplace_back(order.begin(), order.begin() + static_cast<long>(t));
    }
    return set;
}

} // namespace mowst::moea
