#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "soids/schedules.hpp"

using namespace soids;

TEST_CASE("c_t closed form") {
    CHECK(c_t(1, 1, 1) == doctest::Approx(7.0).epsilon(1e-14));

    // Independent long-double evaluation.
    const long double expected =
        5.0L + 2.0L * 2 * std::log(expl(1.0L) * 20 * 1000 / 2.0L);
    CHECK(c_t(1000, 20, 2) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-13));

    double prev = c_t(1, 20, 2);
    for (long t = 2; t < 100; ++t) {
        CHECK(c_t(t, 20, 2) > prev);
        prev = c_t(t, 20, 2);
    }
}

TEST_CASE("theorem-2 rate clamps, branches and monotonicity") {
    for (long t : {0L, 1L, 10L, 1000L, 100000L})
        CHECK(lambda_theorem2(t, 20, 2, 0.05) <= 0.5);

    // Both branches recomputed independently at t=10, d=20, s=2, c_min=0.05.
    const long double c11 = 5.0L + 4.0L * std::log(expl(1.0L) * 20 * 11 / 2.0L);
    const long double rich = sqrtl(3.0L * c11 / (128.0L * 20 * 11));
    const long double poor =
        powl(static_cast<long double>(c11 * std::sqrt(0.05L) / (11 * std::sqrt(2.0L))),
             2.0L / 3.0L) /
        (4.0L * cbrtl(6.0L));
    const double expected = std::min(0.5L, std::max(rich, poor));
    CHECK(lambda_theorem2(10, 20, 2, 0.05) == doctest::Approx(expected).epsilon(1e-12));

    double prev = lambda_theorem2(1, 20, 2, 0.05);
    for (long t = 2; t <= 10000; ++t) {
        const double cur = lambda_theorem2(t, 20, 2, 0.05);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }

    // c_min = 0 downgrades to the rich branch alone.
    const double c1 = c_t(1, 20, 2);
    CHECK(lambda_theorem2(0, 20, 2, 0.0) ==
          doctest::Approx(std::min(0.5, std::sqrt(3.0 * c1 / (128.0 * 20)))).epsilon(1e-14));
}

TEST_CASE("theorem-3 rate") {
    ScheduleState state{20, 2, 0.05, 0.0, 0.0, 0};
    // Empty accumulators: lambda2 = sqrt(s / 2d), below 1/2 when s <= d/2.
    const double lambda2 = std::sqrt(2.0 / 40.0);
    CHECK(lambda_theorem3(state) >= lambda2 - 1e-15);
    CHECK(lambda2 <= 0.5);

    state.sum_ir2 = 1e9;
    state.sum_sqrt_ir3 = 1e9;
    CHECK(lambda_theorem3(state) <= 1e-3);

    // Nonincreasing along any run: accumulators only grow.
    ScheduleState run{20, 2, 0.05, 0.0, 0.0, 0};
    double prev = lambda_theorem3(run);
    for (int t = 0; t < 500; ++t) {
        run.sum_ir2 += 7.0;
        run.sum_sqrt_ir3 += 2.0;
        const double cur = lambda_theorem3(run);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }

    ScheduleState bad{20, 11, 0.05, 0.0, 0.0, 0};
    CHECK_THROWS_AS(lambda_theorem3(bad), std::invalid_argument);
}

TEST_CASE("experimental rate") {
    for (long t : {1L, 10L, 1000L}) CHECK(lambda_experimental(t, 20, 2) <= 0.5);

    const long double logterm = std::log(expl(1.0L) * 20 / 2.0L);
    const long double rich = sqrtl(2.0L * logterm / 20.0L);
    const long double poor = powl(logterm, 2.0L / 3.0L);
    const double expected = std::min(0.5L, 0.1L * std::max(rich, poor));
    CHECK(lambda_experimental(1, 20, 2) == doctest::Approx(expected).epsilon(1e-12));

    CHECK(lambda_experimental(100000000, 20, 2) <= 1e-4);
}

TEST_CASE("t_min threshold") {
    // High-precision recomputation at d=100, s=10.
    const long double expected =
        40.0L * sqrtl(3.0L / 10) +
        16.0L * sqrtl(30.0L) * logl(8.0L * expl(1.0L) * sqrtl(3.0L) * 100 / sqrtl(10.0L));
    CHECK(t_min_threshold(100, 10) ==
          doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));

    double prev = 0.0;
    for (int d : {10, 20, 50, 100, 500}) {
        const double cur = t_min_threshold(d, 5);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("schedule enum round trip") {
    for (Schedule s : {Schedule::theorem2, Schedule::theorem3, Schedule::experimental})
        CHECK(schedule_from_string(schedule_to_string(s)) == s);
    CHECK_THROWS_AS(schedule_from_string("nope"), std::invalid_argument);
}
