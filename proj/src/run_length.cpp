#include "cusum/run_length.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cusum {

namespace {

void require_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

double cap(double arl) {
    if (!(arl < kArlCeiling)) { // also catches +inf from exp overflow
        return kArlCeiling;
    }
    return arl;
}

} // namespace

ChartDesign ChartDesign::for_shift(int n, double h, double decision_interval, double delta) {
    return ChartDesign{n, h, decision_interval, delta / 2.0};
}

double one_sided_arl(double drift, double b) {
    require_finite(drift, "drift");
    require_finite(b, "b");
    if (b <= 0.0) {
        throw std::domain_error("adjusted decision interval b must be positive");
    }
    if (std::abs(drift) <= kZeroDriftThreshold) {
        return b * b;
    }
    // e^{-x} + x - 1 written with expm1 to avoid cancellation for small x.
    const double x = 2.0 * drift * b;
    return cap((std::expm1(-x) + x) / (2.0 * drift * drift));
}

double in_control_one_sided(double reference_value, double b) {
    require_finite(reference_value, "reference value");
    require_finite(b, "b");
    if (reference_value <= 0.0) {
        throw std::domain_error("reference value must be positive; use one_sided_arl(0, b)");
    }
    if (b <= 0.0) {
        throw std::domain_error("adjusted decision interval b must be positive");
    }
    if (reference_value <= kZeroDriftThreshold) {
        return b * b;
    }
    // Same operation order as one_sided_arl(-K, b) so the two agree bit for bit.
    const double x = 2.0 * reference_value * b;
    return cap((std::expm1(x) - x) / (2.0 * reference_value * reference_value));
}

OneSidedPair out_of_control_one_sided(double delta, double reference_value, double b) {
    require_finite(delta, "delta");
    require_finite(reference_value, "reference value");
    if (delta <= 0.0) {
        throw std::domain_error("shift delta must be positive");
    }
    if (reference_value <= 0.0) {
        throw std::domain_error("reference value must be positive");
    }
    return OneSidedPair{one_sided_arl(-delta - reference_value, b),
                        one_sided_arl(delta - reference_value, b)};
}

double combine_two_sided(double arl_minus, double arl_plus) {
    if (!(arl_minus > 0.0) || !(arl_plus > 0.0)) {
        throw std::domain_error("one-sided ARLs must be positive");
    }
    return 1.0 / (1.0 / arl_minus + 1.0 / arl_plus);
}

RunLengthProfile arl_profile(double delta, double decision_interval) {
    require_finite(decision_interval, "decision interval");
    if (decision_interval <= 0.0) {
        throw std::domain_error("decision interval H must be positive");
    }
    const double reference_value = delta / 2.0;
    const double b = adjusted_decision_interval(decision_interval);
    const auto ooc = out_of_control_one_sided(delta, reference_value, b);
    const double ic = in_control_one_sided(reference_value, b);
    return RunLengthProfile{combine_two_sided(ic, ic), combine_two_sided(ooc.lower, ooc.upper)};
}

} // namespace cusum
