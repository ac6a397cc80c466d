#include "mowst/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "mowst/error.hpp"

namespace mowst::moea {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Individual evaluate_genotype(const Problem& problem, Genotype g) {
    Evaluation ev = problem.evaluate(g);
    Individual ind;
    ind.genotype = std::move(g);
    ind.objectives = std::move(ev.objectives);
    ind.constraint_violation = ev.constraint_violation;
    ind.signature = std::move(ev.signature);
    ind.evaluated = true;
    return ind;
}

/// All-time non-dominated archive of feasible points. Strictly dominated
/// entries are evicted; equal objective vectors from distinct genotypes are
/// kept (the genotype-to-front mapping is many to one).
struct Archive {
    std::vector<Individual> members;

    void add(const Individual& ind) {
        if (ind.constraint_violation > 0.0) return;
        for (const auto& e : members) {
            if (dominates(e.objectives, ind.objectives)) return;
            if (e.objectives == ind.objectives && e.genotype == ind.genotype) return;
        }
        std::erase_if(members,
                      [&](const Individual& e) { return dominates(ind.objectives, e.objectives); });
        members.push_back(ind);
    }

    std::vector<ObjectiveVector> objectives() const {
        std::vector<ObjectiveVector> out;
        out.reserve(members.size());
        for (const auto& m : members) out.push_back(m.objectives);
        return out;
    }
};

double archive_hypervolume(const Archive& archive, const OptimizerConfig& config) {
    if (config.reference_point.empty() || archive.members.empty()) return 0.0;
    return hypervolume(archive.objectives(), config.reference_point);
}

/// Initial population: distinct genotypes while the sampler can provide
/// them, duplicates once the distinct pool is exhausted (small search
/// spaces cannot fill a large population otherwise).
std::vector<Individual> sample_population(const Problem& problem, std::size_t count, Rng& rng,
                                          std::size_t* evaluations) {
    std::vector<Individual> pop;
    std::set<Genotype> seen;
    const std::size_t max_attempts = 200 * std::max<std::size_t>(count, 1);
    std::size_t attempts = 0;
    while (pop.size() < count && attempts < max_attempts) {
        ++attempts;
        Genotype g = problem.sample(rng);
        if (!seen.insert(g).second) continue;
        pop.push_back(evaluate_genotype(problem, std::move(g)));
        ++*evaluations;
    }
    while (pop.size() < count) {
        Genotype g = problem.sample(rng);
        pop.push_back(evaluate_genotype(problem, std::move(g)));
        ++*evaluations;
    }
    if (pop.empty()) throw Error(ErrorKind::SamplingExhausted, "could not sample any individual");
    return pop;
}

std::vector<double> to_doubles(const IntMatrixGenotype& g) {
    return std::vector<double>(g.values.begin(), g.values.end());
}

Genotype from_doubles(const IntMatrixGenotype& shape, const std::vector<double>& vals) {
    IntMatrixGenotype out = shape;
    for (std::size_t i = 0; i < vals.size(); ++i)
        out.values[i] = static_cast<int>(std::llround(vals[i]));
    return Genotype(std::move(out));
}

std::pair<Genotype, Genotype> generic_crossover(const Problem& problem,
                                                const OptimizerConfig& config, const Genotype& a,
                                                const Genotype& b, Rng& rng) {
    if (problem.kind == GenotypeKind::Binary) {
        auto [c1, c2] = one_point_crossover(std::get<BinaryGenotype>(a),
                                            std::get<BinaryGenotype>(b), rng);
        return {Genotype(std::move(c1)), Genotype(std::move(c2))};
    }
    const auto& ga = std::get<IntMatrixGenotype>(a);
    const auto& gb = std::get<IntMatrixGenotype>(b);
    auto [d1, d2] = sbx_crossover(to_doubles(ga), to_doubles(gb), config.sbx_eta,
                                  problem.gene_lower, problem.gene_upper, rng);
    Genotype c1 = from_doubles(ga, d1), c2 = from_doubles(gb, d2);
    if (problem.repair) {
        problem.repair(c1, rng);
        problem.repair(c2, rng);
    }
    return {std::move(c1), std::move(c2)};
}

void mutate(const Problem& problem, const OptimizerConfig& config, Genotype& g, Rng& rng) {
    if (!rng.coin(config.mutation_probability)) return;
    if (problem.kind == GenotypeKind::Binary) {
        auto& bits = std::get<BinaryGenotype>(g);
        if (bits.empty()) return;
        bits = bitflip_mutation(bits, 1.0 / static_cast<double>(bits.size()), rng);
    } else {
        auto& mat = std::get<IntMatrixGenotype>(g);
        for (std::size_t r = 0; r < mat.rows; ++r) {
            if (mat.cols >= 2) {
                std::vector<int> row(mat.values.begin() + static_cast<long>(r * mat.cols),
                                     mat.values.begin() + static_cast<long>((r + 1) * mat.cols));
                inversion_mutation(row, rng);
                std::copy(row.begin(), row.end(),
                          mat.values.begin() + static_cast<long>(r * mat.cols));
            } else if (rng.coin(1.0 / static_cast<double>(mat.rows))) {
                // segment reversal is an identity on single-gene rows; redraw
                // the gene instead so mutation can still move
                std::size_t gene = r * mat.cols;
                long long lo = static_cast<long long>(problem.gene_lower[gene]);
                long long hi = static_cast<long long>(problem.gene_upper[gene]);
                mat.values[gene] = static_cast<int>(rng.int_in(lo, hi));
            }
        }
    }
    if (problem.repair) problem.repair(g, rng);
}

std::vector<Individual> survive(std::vector<Individual> pool, std::size_t capacity) {
    std::vector<ObjectiveVector> objs;
    std::vector<double> cv;
    objs.reserve(pool.size());
    cv.reserve(pool.size());
    for (const auto& ind : pool) {
        objs.push_back(ind.objectives);
        cv.push_back(ind.constraint_violation);
    }
    FrontPartition part = constrained_non_dominated_sort(objs, cv);

    std::vector<Individual> next;
    next.reserve(capacity);
    for (const auto& front : part.fronts) {
        if (next.size() == capacity) break;
        if (next.size() + front.size() <= capacity) {
            for (std::size_t idx : front) next.push_back(std::move(pool[idx]));
        } else {
            std::vector<std::size_t> order = front;
            std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                if (part.crowding[x] != part.crowding[y])
                    return part.crowding[x] > part.crowding[y];
                return x < y; // deterministic truncation ties
            });
            for (std::size_t i = 0; next.size() < capacity; ++i)
                next.push_back(std::move(pool[order[i]]));
        }
    }
    return next;
}

std::size_t binary_tournament(const std::vector<Individual>& pop, const FrontPartition& part,
                              const std::vector<std::size_t>& rank, Rng& rng) {
    if (pop.size() < 2) return 0;
    auto [a, b] = rng.two_distinct(pop.size());
    if (rank[a] != rank[b]) return rank[a] < rank[b] ? a : b;
    if (part.crowding[a] != part.crowding[b]) return part.crowding[a] > part.crowding[b] ? a : b;
    return std::min(a, b);
}

RunResult run_evolutionary(const Problem& problem, const OptimizerConfig& config, bool wst_mode) {
    const auto start = Clock::now();
    Rng sampling = Rng::stream(config.seed, Rng::kSampling);
    Rng selection = Rng::stream(config.seed, Rng::kSelection);
    Rng crossover_rng = Rng::stream(config.seed, Rng::kCrossover);
    Rng mutation_rng = Rng::stream(config.seed, Rng::kMutation);

    std::size_t evaluations = 0;
    std::vector<Individual> pop =
        sample_population(problem, config.population_size, sampling, &evaluations);

    Archive archive;
    for (const auto& ind : pop) archive.add(ind);

    RunResult result;
    result.history.push_back({0, evaluations, archive_hypervolume(archive, config),
                              elapsed_ms(start)});

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        std::vector<ObjectiveVector> objs;
        std::vector<double> cv;
        for (const auto& ind : pop) {
            objs.push_back(ind.objectives);
            cv.push_back(ind.constraint_violation);
        }
        FrontPartition part = constrained_non_dominated_sort(objs, cv);
        std::vector<std::size_t> rank(pop.size(), 0);
        for (std::size_t f = 0; f < part.fronts.size(); ++f)
            for (std::size_t idx : part.fronts[f]) rank[idx] = f;

        std::vector<Individual> rank0;
        if (wst_mode)
            for (std::size_t idx : part.fronts.front()) rank0.push_back(pop[idx]);

        std::vector<Individual> offspring;
        while (offspring.size() < config.offspring_per_generation) {
            const Individual *pa, *pb;
            if (wst_mode) {
                TournamentPick pick = wst_tournament_select(rank0, selection);
                pa = &rank0[pick.father];
                pb = &rank0[pick.mother];
            } else {
                std::size_t ia = binary_tournament(pop, part, rank, selection);
                std::size_t ib = binary_tournament(pop, part, rank, selection);
                pa = &pop[ia];
                pb = &pop[ib];
            }

            std::pair<Genotype, Genotype> children;
            const bool parents_feasible =
                pa->constraint_violation == 0.0 && pb->constraint_violation == 0.0;
            if (wst_mode && problem.crossover && parents_feasible)
                children = problem.crossover(pa->genotype, pb->genotype, crossover_rng);
            else
                children = generic_crossover(problem, config, pa->genotype, pb->genotype,
                                             crossover_rng);

            for (Genotype* child : {&children.first, &children.second}) {
                if (offspring.size() == config.offspring_per_generation) break;
                mutate(problem, config, *child, mutation_rng);
                offspring.push_back(evaluate_genotype(problem, std::move(*child)));
                ++evaluations;
            }
        }

        for (const auto& ind : offspring) archive.add(ind);
        for (auto& ind : offspring) pop.push_back(std::move(ind));
        pop = survive(std::move(pop), config.population_size);

        result.history.push_back({gen, evaluations, archive_hypervolume(archive, config),
                                  elapsed_ms(start)});
    }

    result.front = archive.members;
    return result;
}

} // namespace

std::vector<ObjectiveVector> RunResult::front_objectives() const {
    std::vector<ObjectiveVector> out;
    out.reserve(front.size());
    for (const auto& ind : front) out.push_back(ind.objectives);
    return out;
}

RunResult run_nsga2(const Problem& problem, const OptimizerConfig& config) {
    return run_evolutionary(problem, config, false);
}

RunResult run_moea_wst(const Problem& problem, const OptimizerConfig& config) {
    return run_evolutionary(problem, config, true);
}

RunResult run_moead(const Problem& problem, const OptimizerConfig& config,
                    const WeightVectorSet& weights) {
    const auto start = Clock::now();
    const std::size_t n = weights.vectors.size();
    if (n == 0) throw Error(ErrorKind::ConfigError, "empty weight vector set");

    Rng sampling = Rng::stream(config.seed, Rng::kSampling);
    Rng selection = Rng::stream(config.seed, Rng::kSelection);
    Rng crossover_rng = Rng::stream(config.seed, Rng::kCrossover);
    Rng mutation_rng = Rng::stream(config.seed, Rng::kMutation);

    std::size_t evaluations = 0;
    std::vector<Individual> pop = sample_population(problem, n, sampling, &evaluations);

    const std::size_t m = pop.front().objectives.size();
    ObjectiveVector z(m, std::numeric_limits<double>::infinity());
    auto update_z = [&](const ObjectiveVector& f) {
        for (std::size_t j = 0; j < m; ++j) z[j] = std::min(z[j], f[j]);
    };
    for (const auto& ind : pop) update_z(ind.objectives);

    Archive archive;
    for (const auto& ind : pop) archive.add(ind);

    RunResult result;
    result.history.push_back({0, evaluations, archive_hypervolume(archive, config),
                              elapsed_ms(start)});

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& nbrs = weights.neighborhoods[i];
            std::size_t k, l;
            if (nbrs.size() >= 2) {
                auto [x, y] = selection.two_distinct(nbrs.size());
                k = nbrs[x];
                l = nbrs[y];
            } else {
                k = l = nbrs.front();
            }
            auto children =
                generic_crossover(problem, config, pop[k].genotype, pop[l].genotype, crossover_rng);
            mutate(problem, config, children.first, mutation_rng);
            Individual child = evaluate_genotype(problem, std::move(children.first));
            ++evaluations;
            update_z(child.objectives);

            for (std::size_t j : nbrs) {
                bool better;
                if (child.constraint_violation != pop[j].constraint_violation)
                    better = child.constraint_violation < pop[j].constraint_violation;
                else
                    better = chebyshev_scalarize(child.objectives, weights.vectors[j], z) <=
                             chebyshev_scalarize(pop[j].objectives, weights.vectors[j], z);
                if (better) pop[j] = child;
            }
            archive.add(child);
        }
        result.history.push_back({gen, evaluations, archive_hypervolume(archive, config),
                                  elapsed_ms(start)});
    }

    result.front = archive.members;
    return result;
}

RunResult run_random_search(const Problem& problem, const OptimizerConfig& config) {
    const auto start = Clock::now();
    Rng sampling = Rng::stream(config.seed, Rng::kSampling);

    std::size_t evaluations = 0;
    Archive archive;
    RunResult result;

    for (std::size_t i = 0; i < config.population_size; ++i) {
        archive.add(evaluate_genotype(problem, problem.sample(sampling)));
        ++evaluations;
    }
    result.history.push_back({0, evaluations, archive_hypervolume(archive, config),
                              elapsed_ms(start)});

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        for (std::size_t i = 0; i < config.offspring_per_generation; ++i) {
            archive.add(evaluate_genotype(problem, problem.sample(sampling)));
            ++evaluations;
        }
        result.history.push_back({gen, evaluations, archive_hypervolume(archive, config),
                                  elapsed_ms(start)});
    }

    result.front = archive.members;
    return result;
}

} // namespace mowst::moea
