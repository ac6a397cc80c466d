#ifndef MOWST_ENGINE_HPP
#define MOWST_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mowst/moea.hpp"
#include "mowst/operators.hpp"
#include "mowst/rng.hpp"

namespace mowst::moea {

enum class GenotypeKind { Binary, IntMatrix };

struct Evaluation {
    ObjectiveVector objectives; // canonical minimization
    double constraint_violation = 0.0;
    Histogram signature;
};

/// Problem contract for the optimizers. `evaluate` must be pure; objectives
/// arrive already canonicalized (maximization negated), with `maximized`
/// recording the natural orientation for reporting.
struct Problem {
    std::string name;
    GenotypeKind kind = GenotypeKind::Binary;
    std::vector<std::string> objective_names;
    std::vector<bool> maximized;

    std::function<Genotype(Rng&)> sample;
    std::function<Evaluation(const Genotype&)> evaluate;

    /// Optional problem-specific recombination; only the Wasserstein-selection
    /// optimizer uses it, and only between feasible parents.
    std::function<std::pair<Genotype, Genotype>(const Genotype&, const Genotype&, Rng&)> crossover;

    /// Integer-matrix problems: per-gene bounds for SBX.
    std::vector<double> gene_lower, gene_upper;

    /// Optional repair, applied by the engines after crossover and after
    /// mutation (duplicate candidates, budget overruns, ...).
    std::function<void(Genotype&, Rng&)> repair;

    /// Optional genotype printer for result files (falls back to the generic
    /// 0/1-string or semicolon-joined encoding).
    std::function<std::string(const Genotype&)> serialize;
};

struct OptimizerConfig {
    std::size_t population_size = 40;
    std::size_t offspring_per_generation = 10;
    std::size_t generations = 100;
    double mutation_probability = 0.5; // per-offspring gate; binary flips then use rate 1/len
    double sbx_eta = 3.0;
    std::uint64_t seed = 0;
    ObjectiveVector reference_point; // canonical coords; empty disables HV logging
    std::size_t moead_neighborhood = 10;
};

struct LogRow {
    std::size_t generation = 0;
    std::size_t evaluations = 0;
    double hypervolume = 0.0;
    double wall_ms = 0.0;
};

/// Per-generation log plus the final front. The front is the all-time
/// archive of feasible evaluated points that are not strictly dominated, so
/// its hypervolume is non-decreasing across generations by construction.
struct RunResult {
    std::vector<LogRow> history;
    std::vector<Individual> front;

    std::vector<ObjectiveVector> front_objectives() const;
};

RunResult run_nsga2(const Problem& problem, const OptimizerConfig& config);
RunResult run_moea_wst(const Problem& problem, const OptimizerConfig& config);
RunResult run_moead(const Problem& problem, const OptimizerConfig& config,
                    const WeightVectorSet& weights);
RunResult run_random_search(const Problem& problem, const OptimizerConfig& config);

} // namespace mowst::moea

#endif
