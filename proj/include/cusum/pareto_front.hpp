#pragma once

#include "cusum/moea.hpp"
#include "cusum/problem.hpp"

#include <vector>

namespace cusum {

struct ParetoRow {
    ChartDesign design;
    Evaluation evaluation;

    double cost() const { return evaluation.cost(); }
    double arl_delta() const { return evaluation.arl_delta(); }
    bool feasible() const { return evaluation.feasible; }
};

/// Mutually non-dominated rows, ascending in C_E and so descending in ARL_delta.
struct ParetoFront {
    std::vector<ParetoRow> rows;

    bool empty() const { return rows.empty(); }
    std::size_t size() const { return rows.size(); }
    bool all_feasible() const;
};

// Drops repeated designs and equal objective pairs, keeps only the
// non-dominated rows, and sorts by C_E.
ParetoFront make_front(std::vector<ParetoRow> candidates);

// What the optimizer ranks on under each policy: raw objectives with the
// violation (enforce), raw objectives plus violation and no violation
// (penalty), or raw objectives alone (off).
moea::Fitness ranking_fitness(const Evaluation& evaluation, ConstraintPolicy policy);

std::vector<moea::GeneBounds> gene_bounds(const DesignSpace& space);

// NSGA-II over (n, h, H). Returns the feasible rank-0 set of the final
// population, or the least-violating set when nothing is feasible.
ParetoFront evolve_front(const DesignProblem& problem, const moea::MoeaConfig& config,
                         const moea::GenerationObserver& observer = {});

} // namespace cusum
