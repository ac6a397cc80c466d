#include "mowst/recsys.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <iostream>
#include <map>
#include <numeric>
#include <set>

#include "mowst/csv.hpp"
#include "mowst/error.hpp"
#include "mowst/ot.hpp"
#include "mowst/parallel.hpp"

namespace mowst::recsys {

std::vector<std::size_t> RatingMatrix::rated_items(std::size_t u) const {
    std::vector<std::size_t> items;
    for (std::size_t o = 0; o < item_count; ++o)
        if (rating(u, o) > 0) items.push_back(o);
    return items;
}

RatingMatrix RatingMatrix::restrict_users(const std::vector<std::size_t>& users) const {
    RatingMatrix out;
    out.user_count = users.size();
    out.item_count = item_count;
    out.external_item_ids = external_item_ids;
    out.ratings.assign(out.user_count * item_count, 0);
    out.item_degree.assign(item_count, 0);
    for (std::size_t r = 0; r < users.size(); ++r) {
        std::size_t u = users[r];
        if (u >= user_count) throw Error(ErrorKind::NodeOutOfRange, "user index out of range");
        out.external_user_ids.push_back(external_user_ids.empty()
                                            ? static_cast<long long>(u)
                                            : external_user_ids[u]);
        for (std::size_t o = 0; o < item_count; ++o) {
            int val = rating(u, o);
            out.ratings[r * item_count + o] = val;
            if (val > 0) ++out.item_degree[o];
        }
    }
    return out;
}

RatingMatrix load_ratings(const std::string& path) {
    auto rows = csv::read_rows(path, '\t');
    if (rows.empty()) throw Error(ErrorKind::ParseError, path + ": no rating rows");

    struct Entry {
        long long user, item;
        int rating;
    };
    std::vector<Entry> entries;
    std::set<long long> users, items;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = path + " line " + std::to_string(r + 1);
        if (row.size() != 3 && row.size() != 4)
            throw Error(ErrorKind::ParseError, where + ": expected user, item, rating[, timestamp]");
        long long u = csv::parse_int(row[0], where);
        long long o = csv::parse_int(row[1], where);
        long long score = csv::parse_int(row[2], where);
        if (score < 1 || score > 5)
            throw Error(ErrorKind::RatingOutOfRange, where + ": rating " + std::to_string(score));
        entries.push_back({u, o, static_cast<int>(score)});
        users.insert(u);
        items.insert(o);
    }

    RatingMatrix r;
    r.external_user_ids.assign(users.begin(), users.end());
    r.external_item_ids.assign(items.begin(), items.end());
    r.user_count = r.external_user_ids.size();
    r.item_count = r.external_item_ids.size();
    r.ratings.assign(r.user_count * r.item_count, 0);

    std::map<long long, std::size_t> user_ix, item_ix;
    for (std::size_t i = 0; i < r.external_user_ids.size(); ++i)
        user_ix[r.external_user_ids[i]] = i;
    for (std::size_t i = 0; i < r.external_item_ids.size(); ++i)
        item_ix[r.external_item_ids[i]] = i;

    for (const Entry& e : entries) {
        std::size_t u = user_ix[e.user], o = item_ix[e.item];
        if (r.ratings[u * r.item_count + o] != 0)
            std::cerr << "warning: duplicate rating for user " << e.user << " item " << e.item
                      << ", keeping the last value\n";
        r.ratings[u * r.item_count + o] = e.rating;
    }
    r.item_degree.assign(r.item_count, 0);
    for (std::size_t u = 0; u < r.user_count; ++u)
        for (std::size_t o = 0; o < r.item_count; ++o)
            if (r.rating(u, o) > 0) ++r.item_degree[o];
    return r;
}

SimilarityValue user_similarity(const RatingMatrix& r, std::size_t u, std::size_t v,
                                SimilarityMode mode) {
    if (u >= r.user_count || v >= r.user_count)
        throw Error(ErrorKind::NodeOutOfRange, "user index out of range");
    const std::size_t n = r.item_count;
    SimilarityValue out;
    if (mode == SimilarityMode::Cosine) {
        double dot = 0.0, na = 0.0, nb = 0.0;
        for (std::size_t o = 0; o < n; ++o) {
            double a = r.rating(u, o), b = r.rating(v, o);
            dot += a * b;
            na += a * a;
            nb += b * b;
        }
        if (na == 0.0 || nb == 0.0) {
            out.degenerate = true;
            return out;
        }
        out.value = dot / (std::sqrt(na) * std::sqrt(nb));
    } else {
        double ma = 0.0, mb = 0.0;
        for (std::size_t o = 0; o < n; ++o) {
            ma += r.rating(u, o);
            mb += r.rating(v, o);
        }
        ma /= static_cast<double>(n);
        mb /= static_cast<double>(n);
        double dot = 0.0, na = 0.0, nb = 0.0;
        for (std::size_t o = 0; o < n; ++o) {
            double a = r.rating(u, o) - ma, b = r.rating(v, o) - mb;
            dot += a * b;
            na += a * a;
            nb += b * b;
        }
        if (na == 0.0 || nb == 0.0) {
            out.degenerate = true;
            return out;
        }
        out.value = dot / (std::sqrt(na) * std::sqrt(nb));
    }
    return out;
}

namespace {

std::vector<double> similarity_matrix_impl(const RatingMatrix& r, SimilarityMode mode,
                                           bool parallel) {
    const std::size_t m = r.user_count;
    std::vector<double> out(m * m, 0.0);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u; v < m; ++v) pairs.emplace_back(u, v);
    auto body = [&](std::size_t t) {
        auto [u, v] = pairs[t];
        double s = user_similarity(r, u, v, mode).value;
        out[u * m + v] = s;
        out[v * m + u] = s;
    };
    if (parallel)
        parallel_for(pairs.size(), body);
    else
        for (std::size_t t = 0; t < pairs.size(); ++t) body(t);
    return out;
}

} // namespace

std::vector<double> similarity_matrix(const RatingMatrix& r, SimilarityMode mode) {
    return similarity_matrix_impl(r, mode, true);
}
std::vector<double> similarity_matrix_serial(const RatingMatrix& r, SimilarityMode mode) {
    return similarity_matrix_impl(r, mode, false);
}

graph::NetworkGraph build_similarity_graph(const RatingMatrix& r, SimilarityMode mode, double tau) {
    auto sims = similarity_matrix(r, mode);
    std::vector<graph::Edge> edges;
    for (std::size_t u = 0; u < r.user_count; ++u)
        for (std::size_t v = u + 1; v < r.user_count; ++v) {
            double s = sims[u * r.user_count + v];
            if (s > tau && s > 0.0) edges.push_back({u, v, s});
        }
    return graph::NetworkGraph(r.user_count, std::move(edges));
}

std::vector<Histogram> build_user_signatures(const RatingMatrix& r, SimilarityMode mode) {
    const std::size_t m = r.user_count;
    const double lo = mode == SimilarityMode::Cosine ? 0.0 : -1.0;
    const double hi = 1.0;
    const double width = 0.025;
    const std::size_t bins = static_cast<std::size_t>(std::lround((hi - lo) / width));

    std::vector<double> centers(bins);
    for (std::size_t b = 0; b < bins; ++b) centers[b] = lo + (static_cast<double>(b) + 0.5) * width;

    auto sims = similarity_matrix(r, mode);
    std::vector<Histogram> sigs;
    sigs.reserve(m);
    for (std::size_t u = 0; u < m; ++u) {
        std::vector<double> weights(bins, 0.0);
        for (std::size_t v = 0; v < m; ++v) {
            if (v == u) continue;
            double s = std::clamp(sims[u * m + v], lo, hi);
            std::size_t b = std::min(bins - 1,
                                     static_cast<std::size_t>(std::floor((s - lo) / width)));
            weights[b] += 1.0;
        }
        if (m > 1)
            for (double& w : weights) w /= static_cast<double>(m - 1);
        sigs.push_back(Histogram::from_1d(centers, weights));
    }
    return sigs;
}

graph::NetworkGraph build_wasserstein_graph(const std::vector<Histogram>& signatures,
                                            double tau_w) {
    const std::size_t m = signatures.size();
    auto dists = ot::pairwise_wasserstein_1d(signatures);
    // Identical signatures give distance 0 but graph edges must carry a
    // positive weight; the floor stays far below any real signature distance
    // yet large enough for the spectral eigensolver to resolve.
    std::vector<graph::Edge> edges;
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u + 1; v < m; ++v) {
            double d = dists[u * m + v];
            if (d < tau_w) edges.push_back({u, v, std::max(d, 1e-6)});
        }
    return graph::NetworkGraph(m, std::move(edges));
}

namespace {

struct BinGrid {
    double lo, hi;
    std::size_t bins;

    double width() const { return (hi - lo) / static_cast<double>(bins); }
    std::size_t bin_of(double v) const {
        if (v <= lo) return 0;
        std::size_t b = static_cast<std::size_t>(std::floor((v - lo) / width()));
        return std::min(b, bins - 1);
    }
    double center(std::size_t b) const { return lo + (static_cast<double>(b) + 0.5) * width(); }
};

Histogram grid_histogram(const BinGrid& grid, const std::vector<double>& values) {
    std::vector<double> centers(grid.bins), weights(grid.bins, 0.0);
    for (std::size_t b = 0; b < grid.bins; ++b) centers[b] = grid.center(b);
    for (double v : values) weights[grid.bin_of(v)] += 1.0;
    for (double& w : weights) w /= static_cast<double>(values.size());
    return Histogram::from_1d(centers, weights);
}

} // namespace

ObjectiveReport evaluate_recommendation(const moea::IntMatrixGenotype& recommendations,
                                        const RatingMatrix& r) {
    const std::size_t m = recommendations.rows, l = recommendations.cols;
    if (m != r.user_count)
        throw Error(ErrorKind::ShapeMismatch, "one recommendation row per user required");
    if (m == 0 || l == 0) throw Error(ErrorKind::EmptyInput, "empty recommendation matrix");

    const double log2_m = std::log2(static_cast<double>(m));
    ObjectiveReport rep;
    std::set<int> all_items;
    double rating_sum = 0.0;

    for (std::size_t u = 0; u < m; ++u) {
        std::set<int> row_items;
        double row_ratings = 0.0, row_info = 0.0;
        for (std::size_t c = 0; c < l; ++c) {
            int item = recommendations.at(u, c);
            if (item < 0 || static_cast<std::size_t>(item) >= r.item_count)
                throw Error(ErrorKind::NodeOutOfRange, "recommended item id out of range");
            int score = r.rating(u, static_cast<std::size_t>(item));
            if (score == 0)
                throw Error(ErrorKind::UnratedRecommendation,
                            "item " + std::to_string(item) + " not rated by user " +
                                std::to_string(u));
            std::size_t degree = r.item_degree[static_cast<std::size_t>(item)];
            if (degree == 0)
                throw Error(ErrorKind::ZeroDegreeItem, "item " + std::to_string(item));
            row_items.insert(item);
            all_items.insert(item);
            row_ratings += score;
            row_info += std::log2(static_cast<double>(m) / static_cast<double>(degree)) /
                        static_cast<double>(l);
        }
        rating_sum += row_ratings;
        rep.per_user_accuracy.push_back(row_ratings / static_cast<double>(l));
        rep.per_user_coverage.push_back(static_cast<double>(row_items.size()) /
                                        static_cast<double>(l));
        rep.per_user_novelty.push_back(row_info);
    }

    rep.accuracy = rating_sum / (static_cast<double>(m) * static_cast<double>(l));
    rep.coverage = static_cast<double>(all_items.size()) / static_cast<double>(r.item_count);
    rep.novelty = std::accumulate(rep.per_user_novelty.begin(), rep.per_user_novelty.end(), 0.0) /
                  static_cast<double>(m);

    const double nov_hi = log2_m > 0.0 ? log2_m : 1.0;
    const BinGrid acc_grid{1.0, 5.0, 16};
    const BinGrid cov_grid{0.0, 1.0, 10};
    const BinGrid nov_grid{0.0, nov_hi, 10};
    rep.accuracy_histogram = grid_histogram(acc_grid, rep.per_user_accuracy);
    rep.coverage_histogram = grid_histogram(cov_grid, rep.per_user_coverage);
    rep.novelty_histogram = grid_histogram(nov_grid, rep.per_user_novelty);

    // Sparse 3-D histogram over occupied bins; axes normalized so no single
    // objective dominates the transport distance.
    std::map<std::array<std::size_t, 3>, double> cells;
    for (std::size_t u = 0; u < m; ++u) {
        std::array<std::size_t, 3> key = {acc_grid.bin_of(rep.per_user_accuracy[u]),
                                          cov_grid.bin_of(rep.per_user_coverage[u]),
                                          nov_grid.bin_of(rep.per_user_novelty[u])};
        cells[key] += 1.0 / static_cast<double>(m);
    }
    Histogram info3d;
    for (const auto& [key, weight] : cells) {
        info3d.support.push_back({acc_grid.center(key[0]) / 5.0, cov_grid.center(key[1]),
                                  nov_grid.center(key[2]) / nov_hi});
        info3d.weights.push_back(weight);
    }
    rep.info3d = std::move(info3d);
    return rep;
}

moea::Problem make_rs_problem(const RatingMatrix& r, const std::vector<std::size_t>& user_subset,
                              std::size_t top_l) {
    if (top_l == 0) throw Error(ErrorKind::ConfigError, "top_l must be positive");
    std::vector<std::size_t> users = user_subset;
    if (users.empty()) {
        users.resize(r.user_count);
        std::iota(users.begin(), users.end(), 0);
    }
    RatingMatrix sub = r.restrict_users(users);

    std::vector<std::vector<std::size_t>> candidates(sub.user_count);
    for (std::size_t u = 0; u < sub.user_count; ++u) {
        candidates[u] = sub.rated_items(u);
        if (candidates[u].size() < top_l)
            throw Error(ErrorKind::UserTooSparse,
                        "user " + std::to_string(u) + " rated fewer than L items");
    }

    const std::size_t m = sub.user_count;
    moea::Problem problem;
    problem.name = "recommender";
    problem.kind = moea::GenotypeKind::IntMatrix;
    problem.objective_names = {"accuracy", "coverage", "novelty"};
    problem.maximized = {true, true, true};

    problem.gene_lower.assign(m * top_l, 0.0);
    problem.gene_upper.assign(m * top_l, 0.0);
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t c = 0; c < top_l; ++c)
            problem.gene_upper[u * top_l + c] = static_cast<double>(candidates[u].size() - 1);

    // Genotype entries are per-user candidate indices; item ids only appear
    // at evaluation and serialization time.
    auto to_items = [candidates, top_l](const moea::IntMatrixGenotype& g) {
        moea::IntMatrixGenotype items = g;
        for (std::size_t u = 0; u < g.rows; ++u)
            for (std::size_t c = 0; c < top_l; ++c)
                items.at(u, c) = static_cast<int>(candidates[u][static_cast<std::size_t>(g.at(u, c))]);
        return items;
    };

    problem.sample = [m, top_l, candidates](Rng& rng) {
        moea::IntMatrixGenotype g;
        g.rows = m;
        g.cols = top_l;
        g.values.assign(m * top_l, 0);
        for (std::size_t u = 0; u < m; ++u) {
            std::vector<std::size_t> idx(candidates[u].size());
            std::iota(idx.begin(), idx.end(), 0);
            rng.shuffle(idx);
            for (std::size_t c = 0; c < top_l; ++c) g.at(u, c) = static_cast<int>(idx[c]);
        }
        return moea::Genotype(std::move(g));
    };

    problem.repair = [candidates, top_l](moea::Genotype& geno, Rng&) {
        auto& g = std::get<moea::IntMatrixGenotype>(geno);
        for (std::size_t u = 0; u < g.rows; ++u) {
            const int cap = static_cast<int>(candidates[u].size()) - 1;
            std::set<int> used;
            for (std::size_t c = 0; c < top_l; ++c) {
                int v = std::clamp(g.at(u, c), 0, cap);
                if (used.count(v)) {
                    // nearest unused candidate index, lower index on ties
                    int best = -1, best_gap = INT_MAX;
                    for (int off = 0; off <= cap; ++off) {
                        for (int cand : {v - off, v + off}) {
                            if (cand < 0 || cand > cap || used.count(cand)) continue;
                            if (off < best_gap || (off == best_gap && cand < best)) {
                                best = cand;
                                best_gap = off;
                            }
                        }
                        if (best >= 0) break;
                    }
                    v = best >= 0 ? best : v;
                }
                used.insert(v);
                g.at(u, c) = v;
            }
        }
    };

    problem.evaluate = [sub, to_items](const moea::Genotype& g) {
        const auto& mat = std::get<moea::IntMatrixGenotype>(g);
        ObjectiveReport rep = evaluate_recommendation(to_items(mat), sub);
        moea::Evaluation out;
        out.objectives = {-rep.accuracy, -rep.coverage, -rep.novelty};
        out.constraint_violation = 0.0;
        out.signature = rep.info3d;
        return out;
    };

    // Result files carry external item ids, not candidate indices.
    std::vector<long long> ext_items = sub.external_item_ids;
    problem.serialize = [to_items, ext_items](const moea::Genotype& g) {
        const auto& mat = to_items(std::get<moea::IntMatrixGenotype>(g));
        std::string out;
        for (std::size_t u = 0; u < mat.rows; ++u) {
            if (u > 0) out += '|';
            for (std::size_t c = 0; c < mat.cols; ++c) {
                if (c > 0) out += ';';
                long long id = ext_items.empty() ? mat.at(u, c)
                                                  : ext_items[static_cast<std::size_t>(mat.at(u, c))];
                out += std::to_string(id);
            }
        }
        return out;
    };

    return problem;
}

std::vector<std::size_t> cluster_users(const graph::NetworkGraph& g, std::size_t k,
                                       std::uint64_t seed) {
    return graph::spectral_clustering(g, k, seed);
}

std::string clusters_to_csv(const std::vector<std::size_t>& assignment) {
    std::string out = "user_id,cluster\n";
    for (std::size_t u = 0; u < assignment.size(); ++u)
        out += std::to_string(u) + "," + std::to_string(assignment[u]) + "\n";
    return out;
}

} // namespace mowst::recsys
