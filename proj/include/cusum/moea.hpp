#pragma once

// Elitist non-dominated sorting genetic algorithm (NSGA-II) for
// two-objective minimization problems with a scalar constraint violation.
// Genes are real-valued and box-bounded; decoding to a domain type is the
// caller's business.

#include "cusum/random.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace cusum::moea {

inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();

/// What the optimizer ranks on. violation == 0 means feasible.
struct Fitness {
    std::array<double, 2> objectives{};
    double violation = 0.0;

    bool feasible() const { return violation <= 0.0; }
};

struct Individual {
    std::vector<double> genes;
    Fitness fitness;
    std::size_t rank = 0; // front index, 0 = best
    double crowding = 0.0;
};

struct GeneBounds {
    double lower = 0.0;
    double upper = 1.0;
};

struct MoeaConfig {
    std::size_t population_size = 100;
    std::size_t generations = 250;
    double crossover_probability = 0.9;
    double crossover_distribution_index = 20.0;
    double mutation_probability_per_gene = 1.0 / 3.0;
    double mutation_distribution_index = 20.0;
    std::uint64_t rng_seed = 1;

    void validate() const;
    friend bool operator==(const MoeaConfig&, const MoeaConfig&) = default;
};

// Pareto dominance on objectives only (minimization).
bool dominates(const std::array<double, 2>& a, const std::array<double, 2>& b);

// Feasible beats infeasible; two infeasible compare by violation; two
// feasible compare by Pareto dominance.
bool constrained_dominates(const Fitness& a, const Fitness& b);

// Deb's O(M N^2) sort. Returns fronts as indices into `population` and
// writes each member's rank. Empty input gives an empty result.
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::span<Individual> population);

// Crowding distance over the members of one front (indices into population).
// Boundary members per objective get +inf; a zero objective range adds 0.
void crowding_distance(std::span<Individual> population, std::span<const std::size_t> front);

// Lower rank wins, then larger crowding; on a full tie the first argument wins.
const Individual& crowded_compare(const Individual& a, const Individual& b);

// Simulated binary crossover with bounds, applied per gene with probability 1/2.
void sbx_crossover(std::span<const double> parent1, std::span<const double> parent2,
                   std::span<double> child1, std::span<double> child2,
                   std::span<const GeneBounds> bounds, double distribution_index, Rng& rng);

// Bounded polynomial mutation, applied per gene with the given probability.
void polynomial_mutation(std::span<double> genes, std::span<const GeneBounds> bounds,
                         double probability, double distribution_index, Rng& rng);

using FitnessFunction = std::function<Fitness(std::span<const double>)>;

// Called once with the initial population (generation 0) and then after
// every survivor selection.
using GenerationObserver =
    std::function<void(std::size_t generation, std::span<const Individual> population)>;

/// Runs the generational loop and returns the final rank-0 set.
///
/// If the final population holds any feasible individual the result is
/// all feasible; otherwise it is the least-violating set. All randomness
/// comes from one Rng seeded with config.rng_seed, and fitness calls happen
/// in a fixed order, so identical inputs give identical output.
std::vector<Individual> evolve(const FitnessFunction& fitness, std::span<const GeneBounds> bounds,
                               const MoeaConfig& config, const GenerationObserver& observer = {});

} // namespace cusum::moea
