#ifndef MOWST_OPERATORS_HPP
#define MOWST_OPERATORS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mowst/moea.hpp"
#include "mowst/rng.hpp"

namespace mowst::moea {

struct TournamentPick {
    std::size_t father = 0;
    std::size_t mother = 0;
    bool fallback = false; // front had fewer than 2 members, sampled with replacement
};

/// Binary tournament between two candidate parent pairs sampled from the
/// current Pareto front. With four feasible candidates the pair whose
/// signatures are farthest apart in Wasserstein distance wins (exploration);
/// with any infeasible candidate the pair with the smaller worst constraint
/// violation wins, ties by violation sum, then the first-sampled pair.
TournamentPick wst_tournament_select(const std::vector<Individual>& front, Rng& rng);

/// Feasible-by-design recombination of two binary parents with at most
/// `budget` ones each: children alternate draws from the parents' index
/// pools without replacement (child one starts from the father pool),
/// skipping indices already taken, until min(budget, |J u J'|) ones are set.
std::pair<BinaryGenotype, BinaryGenotype> feasible_by_design_crossover(const BinaryGenotype& x,
                                                                       const BinaryGenotype& x_prime,
                                                                       std::size_t budget, Rng& rng);

std::pair<BinaryGenotype, BinaryGenotype> one_point_crossover(const BinaryGenotype& x,
                                                              const BinaryGenotype& x_prime,
                                                              Rng& rng);

/// Independent per-bit flips with probability `prob`.
BinaryGenotype bitflip_mutation(const BinaryGenotype& x, double prob, Rng& rng);

/// Simulated binary crossover on real-coded genes (per-gene mixing with
/// probability 1/2), clipped to [lower, upper].
std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    const std::vector<double>& a, const std::vector<double>& b, double eta,
    const std::vector<double>& lower, const std::vector<double>& upper, Rng& rng);

void reverse_segment(std::vector<int>& row, std::size_t first, std::size_t last);

/// Reverses one random contiguous segment of the row.
void inversion_mutation(std::vector<int>& row, Rng& rng);

} // namespace mowst::moea

#endif
