#pragma once

// Independent checks on the closed forms and on the optimizer: a raw
// CUSUM recursion simulated in standardized units, an exhaustive grid
// search over the design space, and a renewal-cycle cost simulation.

#include "cusum/economics.hpp"
#include "cusum/pareto_front.hpp"
#include "cusum/problem.hpp"

#include <cstdint>

namespace cusum::oracles {

/// Observations are x_i ~ N(shift, 1); target mean 0.
struct SimulationPlan {
    std::uint64_t replications = 10000;
    std::uint64_t rng_seed = 1;
    double shift = 0.0;
    double reference_value = 0.5; // K
    double decision_interval = 4.0; // H

    void validate() const;
};

struct RunLengthEstimate {
    double mean = 0.0;
    double half_width = 0.0; // 95% normal-approximation CI
    double std_dev = 0.0;
    std::uint64_t replications = 0;
};

inline constexpr std::uint64_t kMaxStepsPerReplication = 10'000'000;

// Two-sided CUSUM run length, signalling at the first sample with
// C+ > H or C- > H. Replication r draws from Rng(mix_seed(seed, r)), so
// the same seed gives common random numbers across designs. Throws
// std::runtime_error if a replication runs past kMaxStepsPerReplication.
RunLengthEstimate simulate_run_length(const SimulationPlan& plan);

struct GridResolution {
    std::size_t h_points = 100;
    std::size_t H_points = 100;
};

inline constexpr std::size_t kMaxGridPoints = 10'000'000;

// Evaluates every integer n in range times uniform h and H lattices
// (endpoints included), keeps feasible points under the problem's policy,
// and returns their non-dominated subset.
ParetoFront grid_reference_front(const DesignProblem& problem, GridResolution grid);

struct CycleCostEstimate {
    double cost_rate = 0.0;  // sum(cost) / sum(length)
    double half_width = 0.0; // 95% CI, delta method on the ratio
    double mean_cycle_cost = 0.0;
    double mean_cycle_length = 0.0;
    std::uint64_t replications = 0;
};

// Simulates renewal cycles of the production process:
//   failure time T ~ Exp(lambda), m = floor(T/h) in-control samples;
//   false alarms form a Poisson process with rate 1/ARL0 per in-control
//   sample, each costing W and, if production stops, T0 hours;
//   the shift is signalled L samples after the last in-control one, L
//   geometric with mean ARL_delta (exponential when ARL_delta < 1);
//   then the result delay n*t and the repair T1 + T2, costing Y.
// C0 accrues on [0, T], C1 from T to the end of production, and sampling
// at (d + n y)/h per producing hour. The ratio of means estimates C_E.
CycleCostEstimate simulate_cycle_cost(const ChartDesign& design, const ProcessModel& process,
                                      const CostTimeParams& params, CostModelVariant variant,
                                      std::uint64_t replications, std::uint64_t seed);

} // namespace cusum::oracles
