#ifndef MOWST_OT_HPP
#define MOWST_OT_HPP

#include <cstdint>
#include <vector>

#include "mowst/histogram.hpp"

namespace mowst::ot {

/// Ground distance between support points: either Euclidean distance raised
/// to a p-exponent, or a caller-supplied dense cost matrix.
struct GroundMetric {
    enum class Kind { Euclidean, Matrix };

    Kind kind = Kind::Euclidean;
    double p_exponent = 1.0;
    std::size_t rows = 0, cols = 0;
    std::vector<double> matrix; // row-major, used when kind == Matrix

    static GroundMetric euclidean(double p = 1.0) {
        GroundMetric g;
        g.kind = Kind::Euclidean;
        g.p_exponent = p;
        return g;
    }

    static GroundMetric cost_matrix(std::size_t m1, std::size_t m2, std::vector<double> entries);
};

/// Optimal coupling between two histograms. `gamma` is m1 x m2 row-major;
/// row sums reproduce the source weights and column sums the target weights.
/// `cost` is the transport distance: for Euclidean ground metrics the p-th
/// root of the optimal objective, for explicit matrices the objective itself.
struct TransportPlan {
    std::size_t m1 = 0, m2 = 0;
    std::vector<double> gamma;
    double cost = 0.0;

    double at(std::size_t i, std::size_t j) const { return gamma[i * m2 + j]; }
    double row_sum(std::size_t i) const;
    double col_sum(std::size_t j) const;
};

/// Exact discrete optimal transport by a transportation-simplex solve on the
/// dense bipartite problem. Requires equal masses within 1e-9.
TransportPlan emd_lp(const Histogram& p1, const Histogram& p2,
                     const GroundMetric& ground = GroundMetric::euclidean());

/// Closed form for scalar supports through the quantile functions of the two
/// weighted CDFs. Agrees with emd_lp on the same inputs.
double wasserstein_1d(const Histogram& p1, const Histogram& p2, double p_exp = 1.0);

/// Convenience: W1 with Euclidean ground distance, routed through the 1-D
/// closed form when supports are scalar.
double wasserstein(const Histogram& p1, const Histogram& p2);

/// Weights on the shared support minimizing sum_k lambda_k W2^2(., ps[k])
/// (the Frechet mean under squared-Euclidean transport cost), solved as one
/// joint linear program over all transport plans plus the free barycenter
/// weights. Empty `lambdas` means uniform 1/N.
Histogram barycenter_fixed_support(const std::vector<Histogram>& ps,
                                   std::vector<double> lambdas = {});

struct KmeansResult {
    std::vector<std::size_t> assignments;
    std::vector<Histogram> barycenters;
    std::vector<double> objective_history; // sum of within-cluster squared W2 costs per iteration
    std::size_t iterations = 0;
};

/// Wasserstein k-means over histograms sharing one support: assign to the
/// closest barycenter (ties to the lowest cluster index), then re-fit
/// barycenters; stops when assignments stabilize or max_iter is reached.
/// Initial barycenters are k distinct inputs chosen by the seeded generator.
KmeansResult wst_kmeans_detailed(const std::vector<Histogram>& ps, std::size_t k,
                                 std::size_t max_iter, std::uint64_t seed);
std::vector<std::size_t> wst_kmeans(const std::vector<Histogram>& ps, std::size_t k,
                                    std::size_t max_iter, std::uint64_t seed);

/// Kullback-Leibler divergence of p against the mixture (p+q)/2, in bits.
/// Always finite on shared supports.
double kl_divergence(const Histogram& p, const Histogram& q);
/// Jensen-Shannon divergence (base-2 logs, range [0,1]).
double js_divergence(const Histogram& p, const Histogram& q);
/// sqrt(JS), a metric in [0,1]; 1 exactly on disjoint supports.
double js_metric(const Histogram& p, const Histogram& q);

/// Symmetric matrix of pairwise W1 distances between 1-D histograms
/// (row-major n x n). The parallel kernel fills disjoint cells and is
/// bitwise identical to the serial reference.
std::vector<double> pairwise_wasserstein_1d(const std::vector<Histogram>& hs);
std::vector<double> pairwise_wasserstein_1d_serial(const std::vector<Histogram>& hs);

} // namespace mowst::ot

#endif
