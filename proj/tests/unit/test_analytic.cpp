#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "../support/jeff_integral.hpp"
#include "lzqed/analytic.hpp"

using namespace lzqed::analytic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Reference values below were evaluated independently at 30 digits.

TEST_CASE("standard Landau-Zener probability") {
    CHECK(standard_lz(0.0, 0.3) == 1.0);
    CHECK_THAT(standard_lz(0.08, 0.01), WithinAbs(0.3659313069, 1e-10));
    CHECK_THROWS_AS(standard_lz(0.08, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(standard_lz(-0.1, 0.01), std::invalid_argument);
}

TEST_CASE("generalized formula") {
    CHECK(lz_generalized(0.0, 0.01) == 0.0);
    CHECK_THAT(lz_generalized(0.04, 0.01), WithinAbs(0.6340686931, 1e-10));
    CHECK_THAT(lz_generalized(0.04, 0.01), WithinAbs(0.634070, 2e-6));
    double prev = 1.0;
    for (double v : {0.001, 0.01, 0.1, 1.0, 10.0, 100.0}) {
        const double p = lz_generalized(0.04, v);
        CHECK(p < prev);
        prev = p;
    }
    CHECK(prev < 1e-3);
    CHECK_THROWS_AS(lz_generalized(0.04, -1.0), std::invalid_argument);
}

TEST_CASE("standard and generalized forms are consistent") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> g(0.0, 0.2), v(0.001, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double gi = g(rng), vi = v(rng);
        CHECK_THAT(1.0 - standard_lz(2.0 * gi, vi), WithinAbs(lz_generalized(gi, vi), 1e-15));
    }
}

TEST_CASE("splittings grow with the oscillator index") {
    double prev = 0.0;
    for (int n = 0; n < 20; ++n) {
        const auto s = splitting(n, 0.04);
        CHECK(s.n == n);
        CHECK_THAT(s.delta, WithinRel(2.0 * 0.04 * std::sqrt(n + 1.0), 1e-15));
        CHECK(s.delta > prev);
        prev = s.delta;
    }
}

TEST_CASE("independent-crossing path probabilities") {
    const double g = 0.04, v = 0.01;
    auto w = [&](double d) { return standard_lz(d, v); };
    CHECK_THAT(path_prob_up(0, g, v), WithinAbs(w(2 * g), 1e-15));
    CHECK_THAT(path_prob_up(1, g, v), WithinAbs(w(2 * g) * w(2 * g * std::sqrt(2.0)), 1e-15));
    const double expected2 = w(0.08 * std::sqrt(2.0)) * w(0.08 * std::sqrt(3.0)) +
                             (1 - w(0.08 * std::sqrt(2.0))) * (1 - w(0.08));
    CHECK_THAT(path_prob_up(2, g, v), WithinAbs(expected2, 1e-15));
}

TEST_CASE("thermal average at zero temperature reduces to the generalized formula") {
    CHECK_THAT(thermal_avg_direct(0.04, 0.01, 0.0, 5), WithinAbs(lz_generalized(0.04, 0.01), 1e-15));
    CHECK(default_n_max(0.5) == 30);
    CHECK(default_n_max(0.0) == 10);
}

TEST_CASE("ground-state weight at T = 0.5") {
    CHECK_THAT(1.0 - std::exp(-2.0), WithinAbs(0.864665, 1e-6));
}

TEST_CASE("B function limits") {
    CHECK(b_function(0.3, 0.0) == 1.0);
    CHECK_THAT(b_function(0.0, 0.7), WithinAbs(1.0, 1e-15));
    CHECK_THAT(b_function(0.16, 1.0), WithinAbs(0.7304531415, 1e-10));
    CHECK_THAT(b_function(0.3, 1e-4), WithinAbs(1.0, 1e-12));
}

TEST_CASE("finite-temperature formula") {
    CHECK_THAT(pud_finite_T(0.04, 0.01, 0.0), WithinAbs(lz_generalized(0.04, 0.01), 1e-15));
    CHECK_THAT(pud_finite_T(0.04, 0.01, 0.1), WithinAbs(0.634083080660, 1e-11));
    CHECK_THAT(pud_finite_T(0.04, 0.01, 0.5), WithinAbs(0.666974617720, 1e-11));
    CHECK_THAT(pud_finite_T(0.04, 0.01, 1.0), WithinAbs(0.666369726624, 1e-11));
    CHECK_THAT(pud_finite_T(0.04, 0.01, 2.0), WithinAbs(0.560680432867, 1e-11));
    CHECK(pud_finite_T(0.04, 0.01, 1e4) < 1e-3);
}

TEST_CASE("closed form equals the direct thermal sum") {
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        CHECK_THAT(pud_finite_T(0.04, 0.01, t), WithinAbs(thermal_avg_direct(0.04, 0.01, t, default_n_max(t)), 1e-10));
        CHECK_THAT(pud_finite_T(0.04, 0.01, t), WithinAbs(thermal_avg_direct(0.04, 0.01, t, 200), 1e-10));
    }
    // the residual shrinks like the neglected Boltzmann tail
    const double t = 0.5;
    for (int n_max : {5, 10, 15}) {
        const double residual = std::abs(pud_finite_T(0.04, 0.01, t) - thermal_avg_direct(0.04, 0.01, t, n_max));
        CHECK(residual <= std::exp(-(n_max + 1) / t) + 1e-15);
    }
}

TEST_CASE("finite-temperature curve has an interior maximum at g = 0.04") {
    std::vector<double> p;
    for (int i = 0; i < 12; ++i) p.push_back(pud_finite_T(0.04, 0.01, 0.01 + 0.99 * i / 11.0));
    const auto it = std::max_element(p.begin(), p.end());
    CHECK(it != p.begin());
    CHECK(it != p.end() - 1);
}

TEST_CASE("probabilities stay in [0, 1] on the tested domain") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> g(0.0, 0.1), v(0.005, 1.0), t(0.0, 5.0), gam(0.0, 1.99);
    for (int i = 0; i < 500; ++i) {
        const double gi = g(rng), vi = v(rng), ti = t(rng), gmi = gam(rng);
        for (double p : {lz_generalized(gi, vi), pud_finite_T(gi, vi, ti), pud_zero_T_dissipative(gi, vi, gmi),
                         thermal_avg_direct(gi, vi, ti, default_n_max(ti))}) {
            CHECK(p >= -1e-15);
            CHECK(p <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("effective coupling and spectral density") {
    CHECK_THAT(alpha(0.04, 0.02), WithinRel(4.0 / std::numbers::pi * 0.0016 * 0.02, 1e-15));
    CHECK_THAT(alpha(0.04, 0.02), WithinAbs(4.074e-5, 1e-8));
    CHECK(jeff_spectral_density(0.0, 0.04, 0.02) == 0.0);
    CHECK_THROWS_AS(jeff_spectral_density(-1.0, 0.04, 0.02), std::invalid_argument);
}

TEST_CASE("sum of squared normal-mode couplings") {
    CHECK(sum_ck2(0.0) == 1.0);
    CHECK_THAT(sum_ck2(1e-9), WithinAbs(1.0, 1e-9));
    CHECK_THAT(sum_ck2(std::sqrt(2.0)), WithinAbs(0.5, 1e-15));
    CHECK_THAT(sum_ck2(0.02), WithinAbs(0.9936336962, 1e-10));
    CHECK_THROWS_AS(sum_ck2(2.0), std::invalid_argument);
    // continuous across sqrt(2) and strictly decreasing on (0, 2)
    CHECK_THAT(sum_ck2(std::sqrt(2.0) - 1e-9), WithinAbs(sum_ck2(std::sqrt(2.0) + 1e-9), 1e-8));
    double prev = 1.0;
    for (int i = 1; i < 2000; ++i) {
        const double s = sum_ck2(2.0 * i / 2000.0);
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("integrated spectral density relative to the normal-mode sum") {
    // With alpha = (4/pi) g^2 gamma the integral comes out as 4 kappa sum_ck2,
    // kappa = 1/sqrt(1 - gamma^2/4); the plain equality does not hold.
    for (double gamma : {0.01, 0.1, 1.0}) {
        const double integral = lzqed::testing::jeff_integral_over_g2(0.04, gamma);
        const double kappa = 1.0 / std::sqrt(1.0 - gamma * gamma / 4.0);
        CHECK_THAT(integral, WithinRel(4.0 * kappa * sum_ck2(gamma), 1e-8));
    }
}

TEST_CASE("zero-temperature dissipative formula") {
    CHECK_THAT(pud_zero_T_dissipative(0.04, 0.01, 0.0), WithinAbs(lz_generalized(0.04, 0.01), 1e-15));
    CHECK_THAT(pud_zero_T_dissipative(0.04, 0.01, 0.02), WithinAbs(0.6317191831, 1e-10));
    double prev = 1.0;
    for (int i = 0; i < 100; ++i) {
        const double p = pud_zero_T_dissipative(0.04, 0.01, 1.99 * i / 99.0);
        CHECK(p < prev);
        prev = p;
    }
}
