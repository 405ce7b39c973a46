#include "cusum/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace cusum;
using namespace cusum::oracles;

namespace {

SimulationPlan plan(double shift, double big_h, std::uint64_t reps, std::uint64_t seed = 1) {
    SimulationPlan p;
    p.shift = shift;
    p.reference_value = 0.5;
    p.decision_interval = big_h;
    p.replications = reps;
    p.rng_seed = seed;
    return p;
}

DesignProblem reproduction_problem() {
    DesignProblem p;
    p.constraints.policy = ConstraintPolicy::off;
    p.variant = CostModelVariant{false};
    return p;
}

} // namespace

TEST_CASE("simulated out-of-control run length near the closed form") {
    const auto est = simulate_run_length(plan(1.0, 4.19, 200000));
    CHECK(std::abs(est.mean - 8.72) / 8.72 < 0.10);
    CHECK(est.half_width < 0.05);
    CHECK(est.half_width > 0.0);
    CHECK(est.replications == 200000);
}

TEST_CASE("simulated in-control run length near the closed form") {
    const auto est = simulate_run_length(plan(0.0, 4.19, 200000));
    CHECK(std::abs(est.mean - 205.5) / 205.5 < 0.15);
}

TEST_CASE("run length grows with H under common random numbers") {
    double prev = 0.0;
    for (double big_h : {1.0, 2.0, 4.0}) {
        const double mean = simulate_run_length(plan(1.0, big_h, 2000, 7)).mean;
        CHECK(mean > prev);
        prev = mean;
    }
    // Pathwise: each replication's run length is non-decreasing in H.
    for (std::uint64_t r = 0; r < 200; ++r) {
        double prev_len = 0.0;
        for (double big_h : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) {
            SimulationPlan single = plan(1.0, big_h, 1, r);
            const double len = simulate_run_length(single).mean;
            REQUIRE(len >= prev_len);
            prev_len = len;
        }
    }
}

TEST_CASE("confidence half-width shrinks with the square root of replications") {
    const auto small = simulate_run_length(plan(1.0, 2.5, 20000, 3));
    const auto large = simulate_run_length(plan(1.0, 2.5, 80000, 3));
    const double ratio = small.half_width / large.half_width;
    CHECK(ratio > 2.0 * 0.8);
    CHECK(ratio < 2.0 * 1.2);
}

TEST_CASE("simulation is reproducible from the seed") {
    const auto a = simulate_run_length(plan(1.0, 3.0, 5000, 11));
    const auto b = simulate_run_length(plan(1.0, 3.0, 5000, 11));
    const auto c = simulate_run_length(plan(1.0, 3.0, 5000, 12));
    CHECK(a.mean == b.mean);
    CHECK(a.half_width == b.half_width);
    CHECK(a.mean != c.mean);
}

TEST_CASE("simulation plan validation") {
    CHECK_THROWS_AS(simulate_run_length(plan(1.0, 4.0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(simulate_run_length(plan(1.0, 0.0, 10)), std::invalid_argument);
    auto p = plan(1.0, 4.0, 10);
    p.reference_value = -0.1;
    CHECK_THROWS_AS(simulate_run_length(p), std::invalid_argument);
    p = plan(NAN, 4.0, 10);
    CHECK_THROWS_AS(simulate_run_length(p), std::invalid_argument);
    // One replication gives a mean and no interval.
    const auto one = simulate_run_length(plan(1.0, 4.0, 1));
    CHECK(one.mean >= 1.0);
    CHECK(one.half_width == 0.0);
}

TEST_CASE("grid front of the reference scenario") {
    const auto front = grid_reference_front(reproduction_problem(), GridResolution{});
    REQUIRE(front.size() > 50);
    CHECK(front.rows.front().cost() == doctest::Approx(9.4018).epsilon(1e-4));
    CHECK(front.rows.back().cost() == doctest::Approx(27.78).epsilon(1e-3));
    CHECK(front.rows.back().arl_delta() == doctest::Approx(0.8304).epsilon(1e-3));
    CHECK(front.rows.front().cost() < 9.5);
    CHECK(front.rows.back().cost() > 13.1);
    for (const auto& r : front.rows) {
        CHECK(r.design.n == 2);
    }
    // Double-loop self check.
    for (const auto& a : front.rows) {
        for (const auto& b : front.rows) {
            REQUIRE_FALSE(moea::dominates(a.evaluation.objectives, b.evaluation.objectives));
        }
    }
}

TEST_CASE("grid front under enforced constraints is feasible") {
    DesignProblem p;
    const auto front = grid_reference_front(p, GridResolution{40, 60});
    REQUIRE_FALSE(front.empty());
    for (const auto& r : front.rows) {
        CHECK(r.feasible());
        CHECK(r.evaluation.run_lengths.arl0 >= 200.0);
    }
}

TEST_CASE("two candidate points where one dominates") {
    const auto p = reproduction_problem();
    const auto cheap = ChartDesign::for_shift(2, 0.5, 3.0, 1.0);
    const auto dear = ChartDesign::for_shift(3, 0.5, 3.0, 1.0);
    const auto front = make_front({{dear, p.evaluate(dear)}, {cheap, p.evaluate(cheap)}});
    REQUIRE(front.size() == 1);
    CHECK(front.rows[0].design == cheap);
}

TEST_CASE("smallest grid keeps only the cheapest sample size") {
    DesignProblem p = reproduction_problem();
    p.space.n_range = {2, 3};
    p.space.h_range = {0.5, 0.6};
    p.space.H_range = {3.0, 3.1};
    const auto front = grid_reference_front(p, GridResolution{2, 2});
    REQUIRE_FALSE(front.empty());
    for (const auto& r : front.rows) {
        CHECK(r.design.n == 2);
    }
}

TEST_CASE("grid limits") {
    CHECK_THROWS_AS(grid_reference_front(reproduction_problem(), GridResolution{1, 10}),
                    std::invalid_argument);
    CHECK_THROWS_AS(grid_reference_front(reproduction_problem(), GridResolution{1000, 1000}),
                    std::invalid_argument);
}

TEST_CASE("cycle simulation with uniform cost rate and no other costs") {
    CostTimeParams p;
    p.w = 0.0;
    p.y_cost = 0.0;
    p.d = 0.0;
    p.y_var = 0.0;
    p.c0 = 40.0;
    p.c1 = 40.0;
    const ChartDesign d{2, 0.5, 3.0, 0.5};
    // Production never stops, so every hour costs c.
    const auto est = simulate_cycle_cost(d, {}, p, CostModelVariant{true}, 2000, 5);
    CHECK(est.cost_rate == doctest::Approx(40.0).epsilon(1e-12));

    // With both repair phases stopping production the rate falls to c times
    // the producing fraction, which the closed form gives directly.
    p.gamma1 = 0;
    p.gamma2 = 0;
    p.t0 = 0.0;
    const auto stopped = simulate_cycle_cost(d, {}, p, CostModelVariant{true}, 200000, 5);
    const auto exact = cost_breakdown(d, {}, p, arl_profile(1.0, 3.0), CostModelVariant{true});
    CHECK(std::abs(stopped.cost_rate - exact.total) <= 3.0 * stopped.half_width + 1e-9);
    CHECK(exact.total < 40.0);
}

TEST_CASE("cycle simulation agrees with the closed-form cost") {
    const ChartDesign d{2, 0.36, 4.19, 0.5};
    for (bool literal : {true, false}) {
        const CostModelVariant v{literal};
        const double closed = expected_cost_per_cycle(d, {}, {}, arl_profile(1.0, 4.19), v);
        const auto est = simulate_cycle_cost(d, {}, {}, v, 400000, 9);
        CAPTURE(literal);
        CAPTURE(est.cost_rate);
        CAPTURE(est.half_width);
        CHECK(std::abs(est.cost_rate - closed) <= 3.0 * est.half_width);
        CHECK(est.half_width < 0.02 * closed);
    }
    const double v1 = expected_cost_per_cycle(d, {}, {}, arl_profile(1.0, 4.19), CostModelVariant{true});
    CHECK(v1 == doctest::Approx(18.7429).epsilon(1e-5));
}

TEST_CASE("cycle simulation with gamma1 = 0 tracks the false-alarm downtime") {
    CostTimeParams p;
    p.gamma1 = 0;
    p.t0 = 5.0;
    const ChartDesign d{3, 0.8, 1.5, 0.5};
    const double closed = expected_cost_per_cycle(d, {}, p, arl_profile(1.0, 1.5), CostModelVariant{true});
    const auto est = simulate_cycle_cost(d, {}, p, CostModelVariant{true}, 400000, 13);
    CHECK(std::abs(est.cost_rate - closed) <= 3.0 * est.half_width);
}

TEST_CASE("cycle simulation ignores t0 when production continues") {
    CostTimeParams two;
    CostTimeParams five;
    five.t0 = 5.0;
    const ChartDesign d{2, 0.36, 4.19, 0.5};
    const auto a = simulate_cycle_cost(d, {}, two, {}, 20000, 21);
    const auto b = simulate_cycle_cost(d, {}, five, {}, 20000, 21);
    CHECK(a.cost_rate == b.cost_rate);
    CHECK(a.half_width == b.half_width);
    CHECK_THROWS_AS(simulate_cycle_cost(d, {}, two, {}, 1, 1), std::invalid_argument);
}
