#pragma once

#include "cusum/run_length.hpp"

#include <string_view>

namespace cusum {

/// Shift magnitude and assignable-cause rate. In-control durations are
/// exponential with mean 1/lambda.
struct ProcessModel {
    double delta = 1.0;  // sigma units
    double lambda = 0.01; // per hour

    void validate() const;
    friend bool operator==(const ProcessModel&, const ProcessModel&) = default;
};

/// Cost and time constants of the Lorenzen-Vance cost model.
struct CostTimeParams {
    double c0 = 10.0;    // $/hour, in control
    double c1 = 100.0;   // $/hour, out of control
    double w = 50.0;     // $ per false-alarm investigation
    double y_cost = 25.0; // $ to find and remove an assignable cause
    double d = 0.5;      // $ fixed per sample
    double y_var = 0.1;  // $ per inspected unit
    double t = 0.05;     // h, sample and analyse
    double t0 = 2.0;     // h, per false alarm
    double t1 = 2.0;     // h, discover cause
    double t2 = 2.0;     // h, eliminate cause
    int gamma1 = 1;      // production continues during search
    int gamma2 = 1;      // production continues during repair

    void validate() const;
    friend bool operator==(const CostTimeParams&, const CostTimeParams&) = default;
};

/// Which form of the cost numerator is evaluated. The literal form includes
/// the in-control quality cost C0/lambda; the reproduction form drops it.
struct CostModelVariant {
    bool include_in_control_cost = true;

    std::string_view name() const;
    static CostModelVariant from_name(std::string_view name);
    friend bool operator==(const CostModelVariant&, const CostModelVariant&) = default;
};

// Mean time from the last in-control sample to the assignable cause,
// 1/lambda - h/(e^{lambda h} - 1). Falls back to h/2 when lambda*h < 1e-10.
double expected_time_to_cause(double lambda, double h);

// Mean number of samples taken while in control, 1/(e^{lambda h} - 1).
double expected_in_control_samples(double lambda, double h);

/// Every term of the cost ratio, for auditing.
struct CostBreakdown {
    double tau = 0.0;
    double samples_in_control = 0.0; // S
    double in_control_cost = 0.0;    // C0/lambda, zero when the variant drops it
    double out_of_control_cost = 0.0;
    double false_alarm_cost = 0.0;   // S*W/ARL0
    double repair_cost = 0.0;        // Y
    double sampling_cost = 0.0;      // ((d + n y)/h) * production time
    double cycle_length = 0.0;       // shared denominator
    double total = 0.0;              // C_E
};

CostBreakdown cost_breakdown(const ChartDesign& design, const ProcessModel& process,
                             const CostTimeParams& params, const RunLengthProfile& rl,
                             CostModelVariant variant);

// C_E. Throws std::domain_error if ARLs are non-positive or the cycle length is.
double expected_cost_per_cycle(const ChartDesign& design, const ProcessModel& process,
                               const CostTimeParams& params, const RunLengthProfile& rl,
                               CostModelVariant variant);

} // namespace cusum
