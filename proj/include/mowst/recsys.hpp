#ifndef MOWST_RECSYS_HPP
#define MOWST_RECSYS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mowst/engine.hpp"
#include "mowst/graph.hpp"
#include "mowst/histogram.hpp"

namespace mowst::recsys {

/// Sparse user-item ratings in {1..5}, stored densely with 0 for missing.
struct RatingMatrix {
    std::size_t user_count = 0, item_count = 0;
    std::vector<int> ratings; // row-major user x item, 0 = unrated
    std::vector<std::size_t> item_degree;
    std::vector<long long> external_user_ids, external_item_ids;

    int rating(std::size_t u, std::size_t o) const { return ratings[u * item_count + o]; }
    std::vector<std::size_t> rated_items(std::size_t u) const;

    /// Sub-matrix over the given users; items keep their ids, degrees are
    /// recomputed so the subset forms a self-contained population.
    RatingMatrix restrict_users(const std::vector<std::size_t>& users) const;
};

/// MovieLens-100k `u.data` rows: user_id \t item_id \t rating \t timestamp,
/// 1-based external ids mapped to dense 0-based ids in sorted order.
/// Duplicate (user, item) pairs keep the last rating (warning on stderr).
RatingMatrix load_ratings(const std::string& path);

enum class SimilarityMode { Cosine, Pearson };

struct SimilarityValue {
    double value = 0.0;
    bool degenerate = false; // zero vector (cosine) or constant row (pearson)
};

/// Rows are treated as dense vectors with 0 for missing ratings. Cosine sits
/// in [0,1] on rating data, Pearson in [-1,1]; undefined cases return 0 with
/// the flag set.
SimilarityValue user_similarity(const RatingMatrix& r, std::size_t u, std::size_t v,
                                SimilarityMode mode);

/// Full pairwise similarity matrix (row-major M x M, unit diagonal for
/// cosine). Parallel across pairs; serial reference kept for testing.
std::vector<double> similarity_matrix(const RatingMatrix& r, SimilarityMode mode);
std::vector<double> similarity_matrix_serial(const RatingMatrix& r, SimilarityMode mode);

/// Users linked when similarity exceeds `tau`; edges weighted by the
/// similarity (non-positive similarities never become edges).
graph::NetworkGraph build_similarity_graph(const RatingMatrix& r, SimilarityMode mode, double tau);

/// Per-user histogram of similarities to all other users, bin width 0.025
/// over [0,1] (cosine) or [-1,1] (Pearson).
std::vector<Histogram> build_user_signatures(const RatingMatrix& r, SimilarityMode mode);

/// Users linked when the Wasserstein distance between their signatures is
/// below `tau_w`; edge weight is that distance (floored at a tiny positive
/// value, since identical signatures give distance 0).
graph::NetworkGraph build_wasserstein_graph(const std::vector<Histogram>& signatures, double tau_w);

struct ObjectiveReport {
    double accuracy = 0.0; // mean recommended rating, in [1, 5]
    double coverage = 0.0; // distinct recommended items / item count
    double novelty = 0.0;  // mean self-information of recommended items

    std::vector<double> per_user_accuracy, per_user_coverage, per_user_novelty;
    Histogram accuracy_histogram; // 16 bins over [1, 5]
    Histogram coverage_histogram; // 10 bins over (0, 1]
    Histogram novelty_histogram;  // 10 bins over [0, log2 M]
    Histogram info3d;             // sparse 3-D histogram on normalized axes
};

/// Scores an M x L recommendation matrix of item ids (each row's items must
/// be distinct and rated by that user).
ObjectiveReport evaluate_recommendation(const moea::IntMatrixGenotype& recommendations,
                                        const RatingMatrix& r);

/// Integer-matrix problem over per-user candidate sets (the items each user
/// rated): maximize accuracy, coverage and novelty (negated internally),
/// SBX recombination with round/clip/duplicate-repair, segment-reversal
/// mutation per row, sampling L distinct rated items per user.
moea::Problem make_rs_problem(const RatingMatrix& r, const std::vector<std::size_t>& user_subset,
                              std::size_t top_l);

/// Spectral clustering of a user graph (either the similarity graph or the
/// Wasserstein graph).
std::vector<std::size_t> cluster_users(const graph::NetworkGraph& g, std::size_t k,
                                       std::uint64_t seed);

std::string clusters_to_csv(const std::vector<std::size_t>& assignment);

} // namespace mowst::recsys

#endif
