#ifndef MOWST_MOEA_HPP
#define MOWST_MOEA_HPP

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

#include "mowst/histogram.hpp"

namespace mowst::moea {

/// Objective vectors are canonical minimization everywhere inside the
/// library; maximization objectives are negated at the problem boundary.
using ObjectiveVector = std::vector<double>;

using BinaryGenotype = std::vector<std::uint8_t>;

struct IntMatrixGenotype {
    std::size_t rows = 0, cols = 0;
    std::vector<int> values; // row-major

    int at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    int& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    auto operator<=>(const IntMatrixGenotype&) const = default;
};

using Genotype = std::variant<BinaryGenotype, IntMatrixGenotype>;

struct Individual {
    Genotype genotype;
    ObjectiveVector objectives;
    double constraint_violation = 0.0;
    Histogram signature; // information-space image, set when evaluated
    bool evaluated = false;
};

/// Pareto dominance for minimization: no worse everywhere, strictly better
/// somewhere.
bool dominates(const ObjectiveVector& u, const ObjectiveVector& v);

/// Weak dominance: u <= v in every coordinate (equality allowed throughout).
bool weakly_dominates(const ObjectiveVector& u, const ObjectiveVector& v);

/// Feasibility-first comparison used by the optimizers: a feasible point
/// dominates an infeasible one, lower violation dominates higher, and equal
/// violations fall back to Pareto dominance.
bool constrained_dominates(const ObjectiveVector& u, double cv_u, const ObjectiveVector& v,
                           double cv_v);

struct FrontPartition {
    std::vector<std::vector<std::size_t>> fronts; // F1, F2, ... as input indices
    std::vector<double> crowding;                 // per individual
};

/// Fast non-dominated sorting, stable within fronts by input order, with
/// crowding distances attached.
FrontPartition non_dominated_sort(const std::vector<ObjectiveVector>& objectives);
FrontPartition non_dominated_sort(const std::vector<Individual>& population);

/// Same sorting under the feasibility-first relation; the optimizers rank
/// with this so survival cannot drift infeasible.
FrontPartition constrained_non_dominated_sort(const std::vector<ObjectiveVector>& objectives,
                                              const std::vector<double>& cv);

/// Per-objective normalized neighbor-gap sums; both extremes of every
/// objective get +infinity, as do all members of fronts of size <= 2.
/// Objectives whose maximum over the front is 0 are skipped.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

/// Exact hypervolume against a reference point for 2 or 3 objectives
/// (sweep, and dimension-sweep over z-slabs). Points not weakly dominating
/// the reference are clipped out.
double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& reference);

/// Fraction of points in `b` weakly dominated by at least one point of `a`
/// (equality counts).
double coverage_metric(const std::vector<ObjectiveVector>& a, const std::vector<ObjectiveVector>& b);

/// Fraction of points in `b` strictly Pareto-dominated by some point of `a`.
/// Zero on a duplicate-free non-dominated set compared with itself.
double strict_coverage(const std::vector<ObjectiveVector>& a, const std::vector<ObjectiveVector>& b);

double weighted_sum_scalarize(const ObjectiveVector& f, const std::vector<double>& lambda);
double chebyshev_scalarize(const ObjectiveVector& f, const std::vector<double>& lambda,
                           const ObjectiveVector& z_star);

struct WeightVectorSet {
    std::vector<std::vector<double>> vectors;        // each on the simplex
    std::vector<std::vector<std::size_t>> neighborhoods; // B(i), always contains i
    std::size_t t = 0;
};

/// Simplex-lattice weight vectors for m in {2, 3} with Euclidean-closest
/// neighborhoods of size T.
WeightVectorSet build_weight_vectors(std::size_t n, std::size_t m, std::size_t t);

} // namespace mowst::moea

#endif
