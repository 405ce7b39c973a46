#pragma once

#include "cusum/economics.hpp"
#include "cusum/run_length.hpp"

#include <array>
#include <span>
#include <string_view>

namespace cusum {

struct IntRange {
    int lower = 0;
    int upper = 0;
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct RealRange {
    double lower = 0.0;
    double upper = 0.0;
    bool contains(double x) const { return x >= lower && x <= upper; }
    double clamp(double x) const;
    friend bool operator==(const RealRange&, const RealRange&) = default;
};

/// Box of admissible (n, h, H).
struct DesignSpace {
    IntRange n_range{2, 20};
    RealRange h_range{0.01, 2.0};
    RealRange H_range{0.0001, 5.0};

    void validate() const;
    bool contains(const ChartDesign& design) const;
    friend bool operator==(const DesignSpace&, const DesignSpace&) = default;
};

enum class ConstraintPolicy {
    enforce, // constrained dominance on the summed violation
    penalty, // violation added to both objectives, no feasibility ordering
    off,     // constraints ignored
};

std::string_view to_string(ConstraintPolicy policy);
ConstraintPolicy constraint_policy_from_string(std::string_view name);

/// ARL0 >= arl_lower_bound and ARL_delta <= arl_upper_bound.
struct ArlConstraints {
    double arl_lower_bound = 200.0;
    double arl_upper_bound = 14.0;
    ConstraintPolicy policy = ConstraintPolicy::enforce;

    void validate() const;
    friend bool operator==(const ArlConstraints&, const ArlConstraints&) = default;
};

struct Evaluation {
    std::array<double, 2> objectives{}; // C_E, ARL_delta
    double violation = 0.0;
    bool feasible = true;
    RunLengthProfile run_lengths;

    double cost() const { return objectives[0]; }
    double arl_delta() const { return objectives[1]; }
};

inline constexpr std::size_t kGeneCount = 3;
using GeneVector = std::array<double, kGeneCount>; // order: n, h, H

GeneVector encode(const ChartDesign& design);

// Clamps every gene into the space and rounds n to the nearest integer.
// The reference value is set to delta / 2.
ChartDesign decode(std::span<const double> genes, const DesignSpace& space, double delta);

/// Everything needed to score a chart design.
struct DesignProblem {
    ProcessModel process;
    CostTimeParams costs;
    DesignSpace space;
    ArlConstraints constraints;
    CostModelVariant variant;

    void validate() const;

    ChartDesign decode(std::span<const double> genes) const {
        return cusum::decode(genes, space, process.delta);
    }

    // Throws std::out_of_range for designs outside the space.
    Evaluation evaluate(const ChartDesign& design) const;
};

} // namespace cusum
