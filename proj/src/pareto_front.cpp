#include "cusum/pareto_front.hpp"

#include <algorithm>
#include <tuple>

namespace cusum {

bool ParetoFront::all_feasible() const {
    return std::all_of(rows.begin(), rows.end(), [](const ParetoRow& r) { return r.feasible(); });
}

ParetoFront make_front(std::vector<ParetoRow> candidates) {
    auto key = [](const ParetoRow& r) {
        return std::make_tuple(r.cost(), r.arl_delta(), r.design.n, r.design.h,
                               r.design.decision_interval);
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](const ParetoRow& a, const ParetoRow& b) { return key(a) < key(b); });

    // After sorting by (C_E, ARL), a row is non-dominated iff its ARL is
    // strictly below every ARL seen so far.
    ParetoFront front;
    for (auto& row : candidates) {
        if (!front.rows.empty() && !(row.arl_delta() < front.rows.back().arl_delta())) {
            continue;
        }
        front.rows.push_back(std::move(row));
    }
    return front;
}

moea::Fitness ranking_fitness(const Evaluation& evaluation, ConstraintPolicy policy) {
    moea::Fitness f;
    f.objectives = evaluation.objectives;
    switch (policy) {
    case ConstraintPolicy::enforce:
        f.violation = evaluation.violation;
        break;
    case ConstraintPolicy::penalty:
        for (double& objective : f.objectives) {
            objective += evaluation.violation;
        }
        f.violation = 0.0;
        break;
    case ConstraintPolicy::off:
        f.violation = 0.0;
        break;
    }
    return f;
}

std::vector<moea::GeneBounds> gene_bounds(const DesignSpace& space) {
    return {
        {static_cast<double>(space.n_range.lower), static_cast<double>(space.n_range.upper)},
        {space.h_range.lower, space.h_range.upper},
        {space.H_range.lower, space.H_range.upper},
    };
}

ParetoFront evolve_front(const DesignProblem& problem, const moea::MoeaConfig& config,
                         const moea::GenerationObserver& observer) {
    problem.validate();
    const auto bounds = gene_bounds(problem.space);
    const auto policy = problem.constraints.policy;
    auto fitness = [&](std::span<const double> genes) {
        return ranking_fitness(problem.evaluate(problem.decode(genes)), policy);
    };
    const auto best = moea::evolve(fitness, bounds, config, observer);

    std::vector<ParetoRow> rows;
    rows.reserve(best.size());
    for (const auto& ind : best) {
        const auto design = problem.decode(ind.genes);
        rows.push_back(ParetoRow{design, problem.evaluate(design)});
    }
    const bool any_feasible =
        std::any_of(rows.begin(), rows.end(), [](const ParetoRow& r) { return r.feasible(); });
    if (any_feasible) {
        std::erase_if(rows, [](const ParetoRow& r) { return !r.feasible(); });
    }
    return make_front(std::move(rows));
}

} // namespace cusum
