#include "cusum/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/core.h>

namespace cusum {

double RealRange::clamp(double x) const {
    if (std::isnan(x)) {
        return lower;
    }
    return std::clamp(x, lower, upper);
}

void DesignSpace::validate() const {
    if (n_range.lower < 1 || !(n_range.lower < n_range.upper)) {
        throw std::invalid_argument("n_range must satisfy 1 <= lower < upper");
    }
    auto check = [](const RealRange& r, const char* name) {
        if (!std::isfinite(r.lower) || !std::isfinite(r.upper) || r.lower <= 0.0 ||
            !(r.lower < r.upper)) {
            throw std::invalid_argument(fmt::format("{} must satisfy 0 < lower < upper", name));
        }
    };
    check(h_range, "h_range");
    check(H_range, "H_range");
}

bool DesignSpace::contains(const ChartDesign& design) const {
    return design.n >= n_range.lower && design.n <= n_range.upper &&
           h_range.contains(design.h) && H_range.contains(design.decision_interval);
}

std::string_view to_string(ConstraintPolicy policy) {
    switch (policy) {
    case ConstraintPolicy::enforce:
        return "enforce";
    case ConstraintPolicy::penalty:
        return "penalty";
    case ConstraintPolicy::off:
        return "off";
    }
    return "unknown";
}

ConstraintPolicy constraint_policy_from_string(std::string_view name) {
    if (name == "enforce") {
        return ConstraintPolicy::enforce;
    }
    if (name == "penalty") {
        return ConstraintPolicy::penalty;
    }
    if (name == "off") {
        return ConstraintPolicy::off;
    }
    throw std::invalid_argument("unknown constraint policy '" + std::string(name) + "'");
}

void ArlConstraints::validate() const {
    if (!(arl_upper_bound > 0.0) || !(arl_lower_bound > arl_upper_bound) ||
        !std::isfinite(arl_lower_bound)) {
        throw std::invalid_argument("ARL bounds must satisfy arl_lower_bound > arl_upper_bound > 0");
    }
}

GeneVector encode(const ChartDesign& design) {
    return {static_cast<double>(design.n), design.h, design.decision_interval};
}

ChartDesign decode(std::span<const double> genes, const DesignSpace& space, double delta) {
    if (genes.size() != kGeneCount) {
        throw std::invalid_argument("a chart design has exactly three genes");
    }
    const RealRange n_real{static_cast<double>(space.n_range.lower),
                           static_cast<double>(space.n_range.upper)};
    const int n = static_cast<int>(std::lround(n_real.clamp(genes[0])));
    return ChartDesign::for_shift(n, space.h_range.clamp(genes[1]),
                                  space.H_range.clamp(genes[2]), delta);
}

void DesignProblem::validate() const {
    process.validate();
    costs.validate();
    space.validate();
    constraints.validate();
}

Evaluation DesignProblem::evaluate(const ChartDesign& design) const {
    if (!space.contains(design)) {
        throw std::out_of_range(fmt::format("design (n={}, h={}, H={}) lies outside the design space",
                                            design.n, design.h, design.decision_interval));
    }
    Evaluation e;
    e.run_lengths = arl_profile(process.delta, design.decision_interval);
    e.objectives = {expected_cost_per_cycle(design, process, costs, e.run_lengths, variant),
                    e.run_lengths.arl_delta};
    if (constraints.policy == ConstraintPolicy::off) {
        e.violation = 0.0;
    } else {
        e.violation = std::max(0.0, constraints.arl_lower_bound - e.run_lengths.arl0) +
                      std::max(0.0, e.run_lengths.arl_delta - constraints.arl_upper_bound);
    }
    e.feasible = e.violation == 0.0;
    return e;
}

} // namespace cusum
