#pragma once

// Closed-form CUSUM average run lengths (Siegmund's approximation).
//
// All inputs are in standardized units: shifts and reference values in
// process-sigma, decision intervals in sigma. Nothing here knows about the
// sample size n.

namespace cusum {

/// Decision vector of a CUSUM chart plus its derived reference value.
struct ChartDesign {
    int n = 1;                      // items per sample
    double h = 1.0;                 // sampling interval, hours
    double decision_interval = 1.0; // H, sigma units
    double reference_value = 0.0;   // K = delta / 2

    static ChartDesign for_shift(int n, double h, double decision_interval, double delta);

    friend bool operator==(const ChartDesign&, const ChartDesign&) = default;
};

/// Two-sided ARLs of one design at one shift.
struct RunLengthProfile {
    double arl0 = 0.0;      // in-control
    double arl_delta = 0.0; // out-of-control at the design shift
};

/// Offset added to H to form the adjusted decision interval b.
inline constexpr double kSiegmundCorrection = 1.166;

/// |drift| at or below this takes the b^2 branch.
inline constexpr double kZeroDriftThreshold = 1e-8;

/// One-sided ARLs are capped here so the harmonic combination stays finite.
inline constexpr double kArlCeiling = 1e12;

inline double adjusted_decision_interval(double decision_interval) {
    return decision_interval + kSiegmundCorrection;
}

// (exp(-2*drift*b) + 2*drift*b - 1) / (2*drift^2), or b^2 near zero drift.
// Throws std::domain_error for b <= 0 or non-finite arguments.
double one_sided_arl(double drift, double b);

// In-control one-sided ARL for reference value K > 0. Bit-identical to
// one_sided_arl(-K, b).
double in_control_one_sided(double reference_value, double b);

struct OneSidedPair {
    double lower = 0.0; // drift -delta - K
    double upper = 0.0; // drift  delta - K
};

OneSidedPair out_of_control_one_sided(double delta, double reference_value, double b);

// Harmonic combination 1 / (1/a + 1/b) of two one-sided ARLs.
double combine_two_sided(double arl_minus, double arl_plus);

// K = delta/2, b = H + 1.166, two-sided ARL0 and ARL_delta.
RunLengthProfile arl_profile(double delta, double decision_interval);

} // namespace cusum
