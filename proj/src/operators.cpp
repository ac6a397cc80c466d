#include "mowst/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mowst/error.hpp"
#include "mowst/ot.hpp"

namespace mowst::moea {

TournamentPick wst_tournament_select(const std::vector<Individual>& front, Rng& rng) {
    if (front.empty())
        throw Error(ErrorKind::FrontTooSmall, "cannot select parents from an empty front");
    TournamentPick pick;
    if (front.size() < 2) {
        pick.fallback = true;
        return pick; // both parents are the single member
    }

    auto [f1, m1] = rng.two_distinct(front.size());
    auto [f2, m2] = rng.two_distinct(front.size());

    const bool all_feasible = front[f1].constraint_violation == 0.0 &&
                              front[m1].constraint_violation == 0.0 &&
                              front[f2].constraint_violation == 0.0 &&
                              front[m2].constraint_violation == 0.0;
    bool take_second;
    if (all_feasible) {
        double w1 = ot::emd_lp(front[f1].signature, front[m1].signature).cost;
        double w2 = ot::emd_lp(front[f2].signature, front[m2].signature).cost;
        take_second = w2 > w1; // tie keeps the first-sampled pair
    } else {
        double worst1 = std::max(front[f1].constraint_violation, front[m1].constraint_violation);
        double worst2 = std::max(front[f2].constraint_violation, front[m2].constraint_violation);
        double sum1 = front[f1].constraint_violation + front[m1].constraint_violation;
        double sum2 = front[f2].constraint_violation + front[m2].constraint_violation;
        take_second = worst2 < worst1 || (worst2 == worst1 && sum2 < sum1);
    }
    pick.father = take_second ? f2 : f1;
    pick.mother = take_second ? m2 : m1;
    return pick;
}

std::pair<BinaryGenotype, BinaryGenotype> feasible_by_design_crossover(
    const BinaryGenotype& x, const BinaryGenotype& x_prime, std::size_t budget, Rng& rng) {
    if (x.size() != x_prime.size())
        throw Error(ErrorKind::LengthMismatch, "parents of different length");
    std::vector<std::size_t> father_pool, mother_pool;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) father_pool.push_back(i);
        if (x_prime[i]) mother_pool.push_back(i);
    }
    if (father_pool.size() > budget || mother_pool.size() > budget)
        throw Error(ErrorKind::InfeasibleParent, "parent exceeds the sensor budget");

    std::size_t union_size = 0;
    {
        std::vector<char> seen(x.size(), 0);
        for (std::size_t i : father_pool) seen[i] = 1;
        for (std::size_t i : mother_pool) seen[i] = 1;
        for (char c : seen) union_size += c;
    }
    const std::size_t target = std::min(budget, union_size);

    auto make_child = [&](bool father_first) {
        BinaryGenotype child(x.size(), 0);
        std::vector<std::size_t> pools[2] = {father_pool, mother_pool};
        std::size_t turn = father_first ? 0 : 1;
        std::size_t placed = 0;
        while (placed < target) {
            std::size_t p = !pools[turn].empty() ? turn : 1 - turn;
            if (pools[p].empty()) break;
            std::size_t pos = static_cast<std::size_t>(rng.index(pools[p].size()));
            std::size_t idx = pools[p][pos];
            pools[p][pos] = pools[p].back();
            pools[p].pop_back();
            if (!child[idx]) {
                child[idx] = 1;
                ++placed;
            }
            turn = 1 - turn;
        }
        return child;
    };

    BinaryGenotype c1 = make_child(true);
    BinaryGenotype c2 = make_child(false);
    return {std::move(c1), std::move(c2)};
}

std::pair<BinaryGenotype, BinaryGenotype> one_point_crossover(const BinaryGenotype& x,
                                                              const BinaryGenotype& x_prime,
                                                              Rng& rng) {
    if (x.size() != x_prime.size())
        throw Error(ErrorKind::LengthMismatch, "parents of different length");
    if (x.size() < 2) return {x, x_prime};
    std::size_t cut = static_cast<std::size_t>(rng.int_in(1, static_cast<long long>(x.size()) - 1));
    BinaryGenotype c1 = x, c2 = x_prime;
    for (std::size_t i = cut; i < x.size(); ++i) {
        c1[i] = x_prime[i];
        c2[i] = x[i];
    }
    return {std::move(c1), std::move(c2)};
}

BinaryGenotype bitflip_mutation(const BinaryGenotype& x, double prob, Rng& rng) {
    BinaryGenotype out = x;
    for (auto& bit : out)
        if (rng.coin(prob)) bit = bit ? 0 : 1;
    return out;
}

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    const std::vector<double>& a, const std::vector<double>& b, double eta,
    const std::vector<double>& lower, const std::vector<double>& upper, Rng& rng) {
    if (a.size() != b.size() || a.size() != lower.size() || a.size() != upper.size())
        throw Error(ErrorKind::LengthMismatch, "sbx inputs of different length");
    std::vector<double> c1 = a, c2 = b;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!rng.coin(0.5)) continue;
        double u = rng.real01();
        double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                               : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        double v1 = 0.5 * ((1.0 + beta) * a[i] + (1.0 - beta) * b[i]);
        double v2 = 0.5 * ((1.0 - beta) * a[i] + (1.0 + beta) * b[i]);
        c1[i] = std::clamp(v1, lower[i], upper[i]);
        c2[i] = std::clamp(v2, lower[i], upper[i]);
    }
    return {std::move(c1), std::move(c2)};
}

void reverse_segment(std::vector<int>& row, std::size_t first, std::size_t last) {
    if (first >= row.size() || last >= row.size() || first > last)
        throw Error(ErrorKind::LengthMismatch, "segment outside the row");
    std::reverse(row.begin() + static_cast<long>(first), row.begin() + static_cast<long>(last) + 1);
}

void inversion_mutation(std::vector<int>& row, Rng& rng) {
    if (row.size() < 2) return;
    std::size_t i = static_cast<std::size_t>(rng.index(row.size()));
    std::size_t j = static_cast<std::size_t>(rng.index(row.size()));
    if (i > j) std::swap(i, j);
    reverse_segment(row, i, j);
}

} // namespace mowst::moea
