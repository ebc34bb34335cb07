// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cellcov/errors.hpp"
#include "cellcov/pathloss.hpp"

using namespace cellcov;

TEST_CASE("single slope: trivial amplitudes and gain") {
    const auto m = pathloss_model::single_slope(4.0);
    CHECK(m.slope_count() == 1);
    CHECK(m.amplitude(0) == 1.0);
    CHECK(m.gain(2.0) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(m.segment(123.0) == 0);
}

TEST_CASE("dual slope: continuity amplitude and hand values") {
    const auto m = pathloss_model::dual_slope(2.5, 4.0, 10.0);
    CHECK(m.amplitude(1) == doctest::Approx(std::pow(10.0, 1.5)).epsilon(1e-12));
    // Continuity at the corner, evaluated from both segment formulas.
    const double from_near = std::pow(10.0, -2.5);
    const double from_far = m.amplitude(1) * std::pow(10.0, -4.0);
    CHECK(from_near == doctest::Approx(from_far).epsilon(1e-12));
    CHECK(m.gain(10.0) == doctest::Approx(from_near).epsilon(1e-12));
    CHECK(m.gain(100.0) == doctest::Approx(std::pow(10.0, -6.5)).epsilon(1e-12));
}

TEST_CASE("three slopes: amplitude product") {
    const pathloss_model m({2.0, 3.0, 4.0}, {10.0, 50.0});
    CHECK(m.amplitude(0) == 1.0);
    CHECK(m.amplitude(1) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(m.amplitude(2) == doctest::Approx(500.0).epsilon(1e-12));
}

TEST_CASE("construction: violated invariants are named") {
    CHECK_THROWS_AS(pathloss_model({2.5, 4.0}, {}), domain_error);          // length mismatch
    CHECK_THROWS_AS(pathloss_model({2.5, 4.0}, {10.0, 20.0}), domain_error);
    CHECK_THROWS_AS(pathloss_model({4.0, 2.5}, {10.0}), domain_error);      // decreasing alpha
    CHECK_THROWS_AS(pathloss_model({-1.0, 4.0}, {10.0}), domain_error);     // negative alpha
    CHECK_THROWS_AS(pathloss_model({1.5}, {}), domain_error);               // last alpha <= 2
    CHECK_THROWS_AS(pathloss_model({2.0, 2.0}, {10.0}), domain_error);      // last alpha <= 2
    CHECK_THROWS_AS(pathloss_model({2.5, 4.0}, {-5.0}), domain_error);      // negative breakpoint
    CHECK_THROWS_AS(pathloss_model({2.0, 3.0, 4.0}, {50.0, 10.0}), domain_error);
    CHECK_THROWS_AS(pathloss_model({}, {}), domain_error);
}

TEST_CASE("gain: domain error at nonpositive distance") {
    const auto m = pathloss_model::single_slope(3.0);
    CHECK_THROWS_AS(m.gain(0.0), domain_error);
    CHECK_THROWS_AS(m.gain(-1.0), domain_error);
}

TEST_CASE("random models: continuity, monotonicity, near-field identity") {
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> alpha_step(0.0, 1.5);
    std::uniform_real_distribution<double> break_step(1.0, 200.0);
    std::uniform_int_distribution<int> slopes(1, 5);

    for (int rep = 0; rep < 25; ++rep) {
        const int n = slopes(gen);
        std::vector<double> alphas, breaks;
        double a = alpha_step(gen);
        for (int i = 0; i < n; ++i) {
            alphas.push_back(a);
            a += alpha_step(gen);
        }
        alphas.back() = std::max(alphas.back(), 2.0 + alpha_step(gen) + 1e-3);
        double r = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            r += break_step(gen);
            breaks.push_back(r);
        }
        const pathloss_model m(alphas, breaks);

        for (int i = 1; i < n; ++i) {
            const double rb = m.breakpoint(i);
            const double lo = m.gain(rb * (1.0 - 1e-9));
            const double hi = m.gain(rb * (1.0 + 1e-9));
            CHECK(lo == doctest::Approx(hi).epsilon(1e-8));
        }
        double prev = m.gain(1e-3);
        for (double x = 1e-2; x < 1e4; x *= 1.7) {
            const double cur = m.gain(x);
            CHECK(cur <= prev * (1.0 + 1e-14));
            prev = cur;
        }
        if (n > 1) {
            const double x = m.breakpoint(1) * 0.5;
            CHECK(m.gain(x) == doctest::Approx(std::pow(x, -alphas[0])).epsilon(1e-13));
        }
    }
}

TEST_CASE("corner distance: two-ray formula") {
    CHECK(corner_distance(2.5, 1.5, 1e9) == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(corner_distance(2.5, 1.5, 2e9) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(corner_distance(0.0, 1.5, 1e9) == 0.0);
    CHECK_THROWS_AS(corner_distance(2.5, 1.5, 0.0), domain_error);
    CHECK_THROWS_AS(corner_distance(-1.0, 1.5, 1e9), domain_error);
}
