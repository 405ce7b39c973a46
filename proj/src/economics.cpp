#include "cusum/economics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cusum {

namespace {

void require_non_negative(double value, const char* what) {
    if (!std::isfinite(value) || value < 0.0) {
        throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
    }
}

void require_rate_and_interval(double lambda, double h) {
    if (!std::isfinite(lambda) || lambda <= 0.0) {
        throw std::domain_error("lambda must be positive");
    }
    if (!std::isfinite(h) || h <= 0.0) {
        throw std::domain_error("sampling interval h must be positive");
    }
}

} // namespace

void ProcessModel::validate() const {
    if (!std::isfinite(delta) || delta <= 0.0) {
        throw std::invalid_argument("process.delta must be positive");
    }
    if (!std::isfinite(lambda) || lambda <= 0.0) {
        throw std::invalid_argument("process.lambda must be positive");
    }
}

void CostTimeParams::validate() const {
    require_non_negative(c0, "c0");
    require_non_negative(c1, "c1");
    require_non_negative(w, "w");
    require_non_negative(y_cost, "y_cost");
    require_non_negative(d, "d");
    require_non_negative(y_var, "y_var");
    require_non_negative(t, "t");
    require_non_negative(t0, "t0");
    require_non_negative(t1, "t1");
    require_non_negative(t2, "t2");
    if (!(c1 > c0)) {
        throw std::invalid_argument("c1 must exceed c0");
    }
    if ((gamma1 != 0 && gamma1 != 1) || (gamma2 != 0 && gamma2 != 1)) {
        throw std::invalid_argument("gamma1 and gamma2 must be 0 or 1");
    }
}

std::string_view CostModelVariant::name() const {
    return include_in_control_cost ? "literal" : "no-in-control-cost";
}

CostModelVariant CostModelVariant::from_name(std::string_view name) {
    if (name == "literal") {
        return CostModelVariant{true};
    }
    if (name == "no-in-control-cost") {
        return CostModelVariant{false};
    }
    throw std::invalid_argument("unknown cost model variant '" + std::string(name) + "'");
}

double expected_time_to_cause(double lambda, double h) {
    require_rate_and_interval(lambda, h);
    const double x = lambda * h;
    if (x < 1e-10) {
        return h / 2.0;
    }
    return 1.0 / lambda - h / std::expm1(x);
}

double expected_in_control_samples(double lambda, double h) {
    require_rate_and_interval(lambda, h);
    return 1.0 / std::expm1(lambda * h);
}

CostBreakdown cost_breakdown(const ChartDesign& design, const ProcessModel& process,
                             const CostTimeParams& p, const RunLengthProfile& rl,
                             CostModelVariant variant) {
    if (!(rl.arl0 > 0.0) || !(rl.arl_delta > 0.0)) {
        throw std::domain_error("run lengths must be positive");
    }
    const double lambda = process.lambda;
    const double h = design.h;
    const double n = static_cast<double>(design.n);
    const double g1 = static_cast<double>(p.gamma1);
    const double g2 = static_cast<double>(p.gamma2);

    CostBreakdown out;
    out.tau = expected_time_to_cause(lambda, h);
    out.samples_in_control = expected_in_control_samples(lambda, h);

    // Time from the shift until the cause is removed, counting only the
    // repair phases during which production continues.
    const double out_of_control_time =
        -out.tau + n * p.t + h * rl.arl_delta + g1 * p.t1 + g2 * p.t2;

    out.in_control_cost = variant.include_in_control_cost ? p.c0 / lambda : 0.0;
    out.out_of_control_cost = p.c1 * out_of_control_time;
    out.false_alarm_cost = out.samples_in_control * p.w / rl.arl0;
    out.repair_cost = p.y_cost;
    out.sampling_cost = ((p.d + n * p.y_var) / h) * (1.0 / lambda + out_of_control_time);

    out.cycle_length = 1.0 / lambda + (1.0 - g1) * out.samples_in_control * p.t0 / rl.arl0 -
                       out.tau + n * p.t + h * rl.arl_delta + p.t1 + p.t2;
    if (!(out.cycle_length > 0.0)) {
        throw std::domain_error("expected cycle length is not positive");
    }

    const double first = out.in_control_cost + out.out_of_control_cost + out.false_alarm_cost +
                         out.repair_cost;
    out.total = first / out.cycle_length + out.sampling_cost / out.cycle_length;
    return out;
}

double expected_cost_per_cycle(const ChartDesign& design, const ProcessModel& process,
                               const CostTimeParams& params, const RunLengthProfile& rl,
                               CostModelVariant variant) {
    return cost_breakdown(design, process, params, rl, variant).total;
}

} // namespace cusum
