#include "cusum/run_length.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace cusum;

// Reference values below were evaluated independently at 40 significant
// digits and rounded to double.

TEST_CASE("one_sided_arl examples") {
    CHECK(one_sided_arl(0.5, 5.356) == doctest::Approx(8.721439494778911).epsilon(1e-13));
    CHECK(std::abs(one_sided_arl(0.5, 4.19 + 1.166) - 8.72) <= 0.005);
    CHECK(one_sided_arl(0.0, 3.0) == 9.0);
    CHECK(one_sided_arl(0.75, 4.246) == doctest::Approx(4.773967886436584).epsilon(1e-13));
    CHECK(std::abs(one_sided_arl(0.75, 3.08 + 1.166) - 4.78) <= 0.01);
}

TEST_CASE("one_sided_arl rejects bad input") {
    CHECK_THROWS_AS(one_sided_arl(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(one_sided_arl(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(one_sided_arl(NAN, 1.0), std::domain_error);
    CHECK_THROWS_AS(one_sided_arl(0.5, INFINITY), std::domain_error);
}

TEST_CASE("zero-drift branch and continuity") {
    CHECK(one_sided_arl(kZeroDriftThreshold, 2.0) == 4.0);
    CHECK(one_sided_arl(-kZeroDriftThreshold, 2.0) == 4.0);
    for (double b : {1.0, 3.0, 5.356}) {
        const double near = one_sided_arl(1e-6, b);
        CHECK(std::abs(near - b * b) / (b * b) < 1e-4);
        const double below = one_sided_arl(-1e-6, b);
        CHECK(std::abs(below - b * b) / (b * b) < 1e-4);
    }
}

TEST_CASE("large negative drift is capped") {
    CHECK(one_sided_arl(-50.0, 50.0) == kArlCeiling);
    CHECK(std::isfinite(one_sided_arl(-400.0, 10.0)));
    CHECK(combine_two_sided(kArlCeiling, 3.0) == doctest::Approx(3.0).epsilon(1e-11));
}

TEST_CASE("in_control_one_sided examples") {
    CHECK(in_control_one_sided(0.5, 5.356) == doctest::Approx(411.0394923930426).epsilon(1e-13));
    CHECK(in_control_one_sided(0.5, 2.386) == doctest::Approx(14.96785431785413).epsilon(1e-13));
    CHECK(in_control_one_sided(0.5, 5.356) == one_sided_arl(-0.5, 5.356));
    CHECK_THROWS_AS(in_control_one_sided(0.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(in_control_one_sided(-0.5, 3.0), std::domain_error);
}

TEST_CASE("in-control form is bit-identical to the negative-drift form") {
    std::mt19937_64 gen(20240611);
    std::uniform_real_distribution<double> k_dist(1e-3, 3.0);
    std::uniform_real_distribution<double> b_dist(0.01, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double k = k_dist(gen);
        const double b = b_dist(gen);
        REQUIRE(in_control_one_sided(k, b) == one_sided_arl(-k, b));
    }
}

TEST_CASE("out_of_control_one_sided examples") {
    const auto a = out_of_control_one_sided(1.0, 0.5, 5.356);
    CHECK(a.upper == doctest::Approx(8.721439494778911).epsilon(1e-13));
    CHECK(a.lower == doctest::Approx(2113637.191213309).epsilon(1e-12));
    CHECK(a.upper < a.lower);

    const auto b = out_of_control_one_sided(1.0, 0.5, 2.386);
    CHECK(b.upper == doctest::Approx(2.955993873257695).epsilon(1e-13));
    CHECK(b.lower == doctest::Approx(283.5959295882024).epsilon(1e-13));

    // delta == K hits the zero-drift branch on the upper side.
    const auto c = out_of_control_one_sided(0.8, 0.8, 3.0);
    CHECK(c.upper == 9.0);

    CHECK_THROWS_AS(out_of_control_one_sided(0.0, 0.5, 3.0), std::domain_error);
    CHECK_THROWS_AS(out_of_control_one_sided(1.0, 0.0, 3.0), std::domain_error);
}

TEST_CASE("combine_two_sided") {
    CHECK(combine_two_sided(411.0, 411.0) == doctest::Approx(205.5).epsilon(1e-15));
    CHECK(combine_two_sided(8.721439494778911, 2113637.191213309) ==
          doctest::Approx(8.721403507905989).epsilon(1e-13));
    CHECK(combine_two_sided(2.955993873257695, 283.5959295882024) ==
          doctest::Approx(2.925500622075899).epsilon(1e-13));
    CHECK(std::abs(combine_two_sided(2.955993873257695, 283.5959295882024) - 2.92) < 0.01);
    CHECK_THROWS_AS(combine_two_sided(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(combine_two_sided(1.0, -2.0), std::domain_error);
}

TEST_CASE("two-sided combination is commutative and below both inputs") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> log_arl(-3.0, 12.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = std::pow(10.0, log_arl(gen));
        const double b = std::pow(10.0, log_arl(gen));
        const double ab = combine_two_sided(a, b);
        REQUIRE(ab == combine_two_sided(b, a));
        REQUIRE(ab <= std::min(a, b));
    }
}

TEST_CASE("arl_profile examples") {
    const auto p = arl_profile(1.0, 4.19);
    CHECK(p.arl_delta == doctest::Approx(8.721403507905989).epsilon(1e-13));
    CHECK(p.arl0 == doctest::Approx(205.5197461965213).epsilon(1e-13));
    CHECK(std::abs(p.arl_delta - 8.72) < 0.005);

    CHECK(arl_profile(1.0, 2.50).arl_delta == doctest::Approx(5.380975298871682).epsilon(1e-13));
    CHECK(arl_profile(2.0, 2.30).arl_delta == doctest::Approx(2.966487876121905).epsilon(1e-13));
    CHECK(std::abs(arl_profile(2.0, 2.30).arl_delta - 2.96) < 0.05);

    CHECK_THROWS_AS(arl_profile(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(arl_profile(0.0, 1.0), std::domain_error);
}

TEST_CASE("profile is strictly increasing in H") {
    for (double delta : {1.0, 1.5, 2.0, 2.5}) {
        auto prev = arl_profile(delta, 0.0001);
        CHECK(prev.arl0 > prev.arl_delta);
        for (int i = 1; i <= 500; ++i) {
            const double big_h = 0.0001 + (5.0 - 0.0001) * i / 500.0;
            const auto cur = arl_profile(delta, big_h);
            REQUIRE(cur.arl0 > prev.arl0);
            REQUIRE(cur.arl_delta > prev.arl_delta);
            REQUIRE(cur.arl0 > cur.arl_delta);
            prev = cur;
        }
    }
}

TEST_CASE("profile matches the reference ARL_delta column") {
    // Reference (H, ARL_delta) pairs, two decimals.
    constexpr std::array<std::array<double, 2>, 22> rows{{
        {4.19, 8.72}, {4.07, 8.49}, {3.88, 8.10}, {3.67, 7.69}, {3.51, 7.37}, {3.29, 6.94},
        {3.18, 6.71}, {3.18, 6.71}, {3.02, 6.39}, {2.89, 6.15}, {2.74, 5.84}, {2.63, 5.63},
        {2.50, 5.38}, {2.33, 5.05}, {2.20, 4.80}, {2.09, 4.58}, {1.90, 4.23}, {1.85, 4.13},
        {1.73, 3.88}, {1.59, 3.62}, {1.46, 3.37}, {1.22, 2.92},
    }};
    for (const auto& [big_h, printed] : rows) {
        CAPTURE(big_h);
        CHECK(std::abs(arl_profile(1.0, big_h).arl_delta - printed) <= 0.05);
    }
}

TEST_CASE("ChartDesign::for_shift halves delta") {
    const auto d = ChartDesign::for_shift(2, 0.36, 4.19, 1.0);
    CHECK(d.reference_value == 0.5);
    CHECK(ChartDesign::for_shift(2, 0.36, 4.19, 2.5).reference_value == 1.25);
}
