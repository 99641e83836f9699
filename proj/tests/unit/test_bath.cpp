#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "lzqed/bath.hpp"

using namespace lzqed;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Plain partial sum of the Matsubara series, no tail correction.
double dxp_direct(double temperature, double cutoff, long terms) {
    const double c = 2.0 * std::numbers::pi * temperature;
    const double wd2 = cutoff * cutoff;
    double sum = 0.0;
    for (long n = terms; n >= 1; --n) {
        const double nu = c * double(n);
        sum += 1.0 / (nu + cutoff) - nu / (nu * nu + 1.0);
    }
    return c * wd2 / (2.0 * (wd2 + 1.0)) * (1.0 / cutoff + 2.0 * sum);
}

}  // namespace

TEST_CASE("momentum diffusion") {
    CHECK(dpp(0.0) == 1.0);
    CHECK_THAT(dpp(0.5), WithinAbs(1.3130352855, 1e-10));
    CHECK_THAT(dpp(100.0), WithinRel(200.0, 1e-5));  // classical 2T
    CHECK_THROWS_AS(dpp(-1.0), std::invalid_argument);
}

TEST_CASE("cross diffusion under the zero policy") {
    const auto d = dxp(0.5, 50.0, 10000, DxpPolicy::Zero);
    CHECK(d.value == 0.0);
    CHECK(d.converged);
    SystemParams p = make_params(0.04, 0.01, 0.01, 0.5);
    const auto dc = diffusion_coefficients(p);
    CHECK(dc.d_combined == dc.dpp);
}

TEST_CASE("Matsubara sum converges and matches a brute-force partial sum") {
    for (double t : {0.1, 0.5, 1.0}) {
        const auto a = dxp(t, 50.0, 10000, DxpPolicy::MatsubaraSum);
        const auto b = dxp(t, 50.0, 20000, DxpPolicy::MatsubaraSum);
        CHECK(a.converged);
        CHECK_THAT(a.value, WithinAbs(b.value, 1e-8));
        // the uncorrected tail decays like cutoff / (2 pi T)^2 / terms
        const long m = 2'000'000;
        const double c = 2.0 * std::numbers::pi * t;
        CHECK_THAT(dxp_direct(t, 50.0, m) - 50.0 * 50.0 / 2501.0 * 50.0 / (c * m), WithinAbs(a.value, 1e-5));
    }
}

TEST_CASE("Matsubara sum approaches the zero-temperature closed form") {
    const double zero = dxp(0.0, 50.0, 10000, DxpPolicy::MatsubaraSum).value;
    CHECK_THAT(zero, WithinAbs(-2500.0 / 2501.0 * std::log(50.0), 1e-14));
    const double cold = dxp(1e-3, 50.0, 200000, DxpPolicy::MatsubaraSum).value;
    CHECK_THAT(cold, WithinAbs(zero, 1e-3));
}

TEST_CASE("combined diffusion under the Matsubara policy") {
    SystemParams p = make_params(0.04, 0.01, 0.01, 0.5);
    p.dxp_policy = DxpPolicy::MatsubaraSum;
    const auto dc = diffusion_coefficients(p);
    CHECK_THAT(dc.d_combined, WithinAbs(dc.dpp + 0.01 * dc.dxp, 1e-15));
    CHECK(dc.dxp_converged);
}

TEST_CASE("Liouvillian eigenvalue data") {
    for (double gamma : {0.0, 0.02, 0.5, 1.9}) {
        const auto s = eigenbasis_spec(gamma, 1.3);
        CHECK_THAT(std::norm(s.lambda), WithinAbs(1.0, 1e-15));
        CHECK_THAT(s.lambda.real(), WithinAbs(-gamma / 2.0, 1e-15));
        CHECK_THAT(s.kappa * s.lambda.imag(), WithinAbs(1.0, 1e-15));
        CHECK_THAT(std::abs(s.sigma_a * (s.lambda * s.lambda - 1.0) - 1.3), WithinAbs(0.0, 1e-14));
    }
    CHECK_THROWS_AS(eigenbasis_spec(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("qubit force values") {
    CHECK_THAT(dsigma(0.0, 0.0, 0.04), WithinAbs(-0.02, 1e-15));
    CHECK_THAT(dsigma(1.0, 0.0, 0.04), WithinAbs(-0.01, 1e-15));
    CHECK_THAT(dsigma(3.0, 0.0, 0.04), WithinAbs(0.04 * 2.0 / (2.0 * (1.0 - 9.0)), 1e-15));
}

TEST_CASE("qubit force is even and continuous through the resonance") {
    for (double t : {0.0, 0.1, 0.5, 2.0}) {
        for (double w : {0.0, 0.3, 0.999, 1.0, 1.0005, 1.7, 40.0}) CHECK(dsigma(w, t, 0.04) == dsigma(-w, t, 0.04));
        // across the switch radius the series and the direct quotient agree
        for (double edge : {1.0 - 1e-3, 1.0 + 1e-3}) {
            const double inside = dsigma(edge + (edge < 1.0 ? 1e-12 : -1e-12), t, 0.04);
            const double outside = dsigma(edge + (edge < 1.0 ? -1e-12 : 1e-12), t, 0.04);
            CHECK_THAT(inside, WithinAbs(outside, 1e-11));
        }
        // smooth: the second difference stays small near w = 1
        const double h = 2e-4;
        const double curv = dsigma(1.0 + h, t, 0.04) - 2.0 * dsigma(1.0, t, 0.04) + dsigma(1.0 - h, t, 0.04);
        CHECK(std::abs(curv) < 1e-7);
    }
}

TEST_CASE("oscillatory integrals") {
    const double a = 0.7, b = 1.3, t = 2.1;
    const auto r = ic_is(a, b, t);
    CHECK_THAT(r.ic, WithinAbs(a * (std::cos(a * t) - std::cos(b * t)) / (a * a - b * b), 1e-15));
    CHECK_THAT(r.is, WithinAbs((b * std::sin(a * t) - a * std::sin(b * t)) / (a * a - b * b), 1e-15));

    const auto z = ic_is(0.0, 0.0, 5.0);
    CHECK(z.ic == 0.0);
    CHECK(z.is == 0.0);
}

TEST_CASE("oscillatory integrals at coincident frequencies") {
    const double a = 0.9, t = 3.0;
    const auto r = ic_is(a, a, t);
    CHECK_THAT(r.ic, WithinAbs(-t * std::sin(a * t) / 2.0, 1e-14));
    CHECK_THAT(r.is, WithinAbs(-(std::sin(a * t) - a * t * std::cos(a * t)) / (2.0 * a), 1e-14));
    // series branch against the direct quotient just outside it
    const auto near = ic_is(a, a + 1e-7, t);
    const auto far = ic_is(a, a + 2e-6, t);
    CHECK_THAT(near.ic, WithinAbs(far.ic, 1e-5));
    CHECK_THAT(near.is, WithinAbs(far.is, 1e-5));
}

TEST_CASE("oscillatory integrals reflect in the second frequency") {
    for (double b : {0.4, 0.9, 1e-7}) {
        const auto p = ic_is(0.9, b, 2.5), m = ic_is(0.9, -b, 2.5);
        CHECK_THAT(m.ic, WithinAbs(p.ic, 1e-14));
        CHECK_THAT(m.is, WithinAbs(-p.is, 1e-14));
    }
}
