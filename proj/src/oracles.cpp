#include "cusum/oracles.hpp"

#include "cusum/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace cusum::oracles {

namespace {

constexpr double kZ95 = 1.959963984540054;

} // namespace

void SimulationPlan::validate() const {
    if (replications < 1) {
        throw std::invalid_argument("replications must be >= 1");
    }
    if (!std::isfinite(shift)) {
        throw std::invalid_argument("shift must be finite");
    }
    if (!std::isfinite(reference_value) || reference_value < 0.0) {
        throw std::invalid_argument("reference value K must be >= 0");
    }
    if (!std::isfinite(decision_interval) || decision_interval <= 0.0) {
        throw std::invalid_argument("decision interval H must be positive");
    }
}

RunLengthEstimate simulate_run_length(const SimulationPlan& plan) {
    plan.validate();
    const double k = plan.reference_value;
    const double limit = plan.decision_interval;

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t r = 0; r < plan.replications; ++r) {
        Rng rng(mix_seed(plan.rng_seed, r));
        double upper = 0.0;
        double lower = 0.0;
        std::uint64_t step = 0;
        while (true) {
            ++step;
            const double x = rng.normal(plan.shift, 1.0);
            upper = std::max(0.0, x - k + upper);
            lower = std::max(0.0, -k - x + lower);
            if (upper > limit || lower > limit) {
                break;
            }
            if (step >= kMaxStepsPerReplication) {
                throw std::runtime_error(fmt::format(
                    "replication {} exceeded {} samples without a signal", r,
                    kMaxStepsPerReplication));
            }
        }
        const auto length = static_cast<double>(step);
        sum += length;
        sum_sq += length * length;
    }

    const auto reps = static_cast<double>(plan.replications);
    RunLengthEstimate est;
    est.replications = plan.replications;
    est.mean = sum / reps;
    if (plan.replications > 1) {
        const double var = std::max(0.0, (sum_sq - reps * est.mean * est.mean) / (reps - 1.0));
        est.std_dev = std::sqrt(var);
        est.half_width = kZ95 * est.std_dev / std::sqrt(reps);
    }
    return est;
}

ParetoFront grid_reference_front(const DesignProblem& problem, GridResolution grid) {
    problem.validate();
    if (grid.h_points < 2 || grid.H_points < 2) {
        throw std::invalid_argument("grid needs at least two points per axis");
    }
    const auto& space = problem.space;
    const auto n_count = static_cast<std::size_t>(space.n_range.upper - space.n_range.lower + 1);
    if (n_count * grid.h_points * grid.H_points > kMaxGridPoints) {
        throw std::invalid_argument("grid exceeds the point budget");
    }

    auto lattice = [](const RealRange& r, std::size_t points, std::size_t i) {
        if (i + 1 == points) {
            return r.upper;
        }
        return r.lower + (r.upper - r.lower) * static_cast<double>(i) /
                             static_cast<double>(points - 1);
    };

    std::vector<ParetoRow> feasible;
    for (int n = space.n_range.lower; n <= space.n_range.upper; ++n) {
        for (std::size_t i = 0; i < grid.h_points; ++i) {
            const double h = lattice(space.h_range, grid.h_points, i);
            for (std::size_t j = 0; j < grid.H_points; ++j) {
                const double big_h = lattice(space.H_range, grid.H_points, j);
                const auto design = ChartDesign::for_shift(n, h, big_h, problem.process.delta);
                auto evaluation = problem.evaluate(design);
                if (evaluation.feasible) {
                    feasible.push_back(ParetoRow{design, evaluation});
                }
            }
        }
    }
    return make_front(std::move(feasible));
}

CycleCostEstimate simulate_cycle_cost(const ChartDesign& design, const ProcessModel& process,
                                      const CostTimeParams& p, CostModelVariant variant,
                                      std::uint64_t replications, std::uint64_t seed) {
    process.validate();
    if (replications < 2) {
        throw std::invalid_argument("replications must be >= 2");
    }
    if (!(design.h > 0.0) || design.n < 1) {
        throw std::invalid_argument("design needs n >= 1 and h > 0");
    }
    const auto rl = arl_profile(process.delta, design.decision_interval);
    const double h = design.h;
    const double n = static_cast<double>(design.n);
    const double g1 = static_cast<double>(p.gamma1);
    const double g2 = static_cast<double>(p.gamma2);
    const double sample_cost_rate = (p.d + n * p.y_var) / h;

    struct Cycle {
        double cost;
        double length;
    };
    std::vector<Cycle> cycles;
    cycles.reserve(replications);

    for (std::uint64_t r = 0; r < replications; ++r) {
        Rng rng(mix_seed(seed, r));
        const double failure = rng.exponential(1.0 / process.lambda);
        const double in_control_samples = std::floor(failure / h);

        std::uint64_t false_alarms = 0;
        for (double at = rng.exponential(rl.arl0); at <= in_control_samples;
             at += rng.exponential(rl.arl0)) {
            if (++false_alarms >= kMaxStepsPerReplication) {
                throw std::runtime_error("false-alarm count exceeded the replication cap");
            }
        }

        const double delay_samples = rl.arl_delta >= 1.0
                                         ? static_cast<double>(rng.geometric(1.0 / rl.arl_delta))
                                         : rng.exponential(rl.arl_delta);
        const double signal = h * (in_control_samples + delay_samples);
        const double producing = signal + n * p.t + g1 * p.t1 + g2 * p.t2;
        const double fa = static_cast<double>(false_alarms);

        Cycle c{};
        c.length = signal + n * p.t + p.t1 + p.t2 + (1.0 - g1) * p.t0 * fa;
        c.cost = (variant.include_in_control_cost ? p.c0 * failure : 0.0) +
                 p.c1 * (producing - failure) + p.w * fa + p.y_cost + sample_cost_rate * producing;
        cycles.push_back(c);
    }

    const auto reps = static_cast<double>(replications);
    double total_cost = 0.0;
    double total_length = 0.0;
    for (const auto& c : cycles) {
        total_cost += c.cost;
        total_length += c.length;
    }
    CycleCostEstimate est;
    est.replications = replications;
    est.mean_cycle_cost = total_cost / reps;
    est.mean_cycle_length = total_length / reps;
    est.cost_rate = total_cost / total_length;

    double residual_sq = 0.0;
    for (const auto& c : cycles) {
        const double e = c.cost - est.cost_rate * c.length;
        residual_sq += e * e;
    }
    const double se = std::sqrt(residual_sq / (reps - 1.0)) / (std::sqrt(reps) * est.mean_cycle_length);
    est.half_width = kZ95 * se;
    return est;
}

} // namespace cusum::oracles
