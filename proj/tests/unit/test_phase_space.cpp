#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lzqed/analytic.hpp"
#include "lzqed/fock_oracle.hpp"
#include "lzqed/observables.hpp"
#include "lzqed/phase_space.hpp"

using namespace lzqed;
using Catch::Matchers::WithinAbs;

namespace {

ValidatedParams params_with(double g, double v, double gamma, double temperature, int n_trunc,
                            DxpPolicy policy = DxpPolicy::Zero) {
    SystemParams p = make_params(g, v, gamma, temperature);
    p.n_trunc = n_trunc;
    p.dxp_policy = policy;
    return validate(p);
}

// Random density matrix supported on the lowest three oscillator levels.
Eigen::MatrixXcd low_lying_state(int n_big, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    const int dim = 2 * n_big;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int s = 0; s < 2; ++s)
        for (int k = 0; k < 3; ++k)
            for (int s2 = 0; s2 < 2; ++s2)
                for (int k2 = 0; k2 < 3; ++k2) a(s * n_big + k, s2 * n_big + k2) = cplx(nd(rng), nd(rng));
    Eigen::MatrixXcd rho = a * a.adjoint();
    return rho / rho.trace();
}

// Largest disagreement between the coefficient right-hand side and the mapped operator
// equation, over coefficients with n, n' < 4 where the Fock truncation is exact.
std::pair<double, double> rhs_mismatch(const ValidatedParams& vp, RhsForm form) {
    const int n_big = 14;
    const SolverModel model = make_model(vp);
    const Eigen::MatrixXcd rho = low_lying_state(n_big, 1);
    const double t = 37.0;
    const auto ops = make_fock_operators(n_big, vp.params().g);
    const Eigen::MatrixXcd drho =
        redfield_rhs_matrix(t, rho, ops, vp.params(), model.diffusion.dpp, model.diffusion.dxp);

    const EigenBasis basis(model.spec, model.diffusion, 8);
    const CoefficientState c = map_to_eigenbasis(FockDensityMatrix{rho, t}, basis);
    const CoefficientState dc = map_to_eigenbasis(FockDensityMatrix{drho, t}, basis);
    SolverModel m8 = model;
    m8.params.n_trunc = 8;
    Eigen::VectorXcd r(c.data().size());
    rhs(t, c.data(), m8, r, form);
    double err = 0.0, mag = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    const auto o = CoefficientState::offset(8, a, b) + 2 * i + j;
                    err = std::max(err, std::abs(r[o] - dc.data()[o]));
                    mag = std::max(mag, std::abs(dc.data()[o]));
                }
    return {err, mag};
}

}  // namespace

TEST_CASE("coefficient layout") {
    CoefficientState c(3, 1.5);
    CHECK(c.data().size() == 36);
    CHECK(c.time() == 1.5);
    c(2, 1, 1, 0) = cplx(4.0, 1.0);
    CHECK(c.data()[CoefficientState::offset(3, 2, 1) + 2] == cplx(4.0, 1.0));
    Eigen::Matrix2cd m;
    m << 1.0, 2.0, 3.0, 4.0;
    c.set_block(1, 2, m);
    CHECK(c.block(1, 2) == m);
}

TEST_CASE("initial state is spin up in the stationary Gaussian") {
    const auto c = initial_state(params_with(0.04, 0.01, 0.01, 0.5, 6));
    CHECK(c(0, 0, 0, 0) == cplx(1.0));
    CHECK(c.data().cwiseAbs().sum() == 1.0);
    CHECK(trace_residual(c) == 0.0);
    CHECK(hermiticity_residual(c) == 0.0);
    CHECK(spill(c) == 0.0);
    CHECK(c.time() == -2000.0);
}

TEST_CASE("right-hand side agrees with the operator master equation") {
    struct Case {
        double gamma, temperature;
        DxpPolicy policy;
    };
    for (const Case k : {Case{0.0, 0.0, DxpPolicy::Zero}, Case{0.1, 0.0, DxpPolicy::Zero},
                         Case{0.1, 0.5, DxpPolicy::Zero}, Case{0.3, 1.0, DxpPolicy::MatsubaraSum}}) {
        const auto [err, mag] = rhs_mismatch(params_with(0.3, 0.01, k.gamma, k.temperature, 14, k.policy),
                                             RhsForm::Consistent);
        INFO("gamma " << k.gamma << " T " << k.temperature);
        CHECK(mag > 0.1);
        CHECK(err < 1e-10);
    }
}

TEST_CASE("the alternative ladder form does not reproduce the master equation") {
    const auto [err, mag] = rhs_mismatch(params_with(0.3, 0.01, 0.1, 0.5, 14), RhsForm::AsPrinted);
    CHECK(err > 1e-2 * mag);
}

TEST_CASE("decoupled qubit leaves the stationary state untouched") {
    const auto vp = params_with(0.0, 0.01, 0.05, 0.5, 5);
    const SolverModel model = make_model(vp);
    const CoefficientState c0 = initial_state(vp);
    const CoefficientState d = rhs(c0, model);
    CHECK(d.data().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("decoupled excitations decay at the Liouvillian rates") {
    const double gamma = 0.05;
    const auto vp = params_with(0.0, 0.01, gamma, 0.5, 4);
    const SolverModel model = make_model(vp);
    CoefficientState c(4, 0.0);
    c(0, 0, 0, 0) = 1.0;
    c(1, 1, 0, 0) = 0.1;
    c(1, 0, 1, 1) = 0.2;
    c(0, 1, 1, 1) = 0.2;
    std::vector<double> samples{0.0, 10.0, 40.0};
    std::vector<Eigen::VectorXcd> got;
    OdeOptions opt;
    opt.rtol = 1e-10;
    opt.atol = 1e-13;
    integrate_dp45([&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { rhs(t, y, model, dy); }, 0.0,
                   c.data(), samples, [&](double, const Eigen::VectorXcd& y) { got.push_back(y); }, opt);
    REQUIRE(got.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const double t = samples[k];
        CHECK(std::abs(got[k][CoefficientState::offset(4, 1, 1)] - 0.1 * std::exp(-gamma * t)) < 1e-9);
        CHECK(std::abs(got[k][CoefficientState::offset(4, 1, 0) + 3] - 0.2 * std::exp(model.spec.lambda * t)) < 1e-9);
        CHECK(std::abs(got[k][CoefficientState::offset(4, 0, 1) + 3] - 0.2 * std::exp(std::conj(model.spec.lambda) * t)) <
              1e-9);
        CHECK(std::abs(got[k][0] - 1.0) < 1e-12);
    }
}

TEST_CASE("exact population rate matches the coefficient equation") {
    const auto vp = params_with(0.3, 0.01, 0.1, 0.5, 8);
    const SolverModel model = make_model(vp);
    const EigenBasis basis(model.spec, model.diffusion, 8);
    const CoefficientState c = map_to_eigenbasis(FockDensityMatrix{low_lying_state(14, 3), 5.0}, basis);
    CoefficientState c8(8, 5.0);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) c8.set_block(a, b, c.block(a, b));
    const CoefficientState d = rhs(c8, model);
    CHECK_THAT(p_up_rate(5.0, c8, model), WithinAbs(d(0, 0, 0, 0).real(), 1e-14));
}

TEST_CASE("fast sweep follows the Landau-Zener estimate") {
    SystemParams p = make_params(0.04, 1.0, 0.0, 0.0);
    p.n_trunc = 6;
    p.t_start = -200.0;
    p.t_end = 200.0;
    IntegrateOptions opt;
    opt.samples = 401;
    const SweepResult r = integrate(validate(p), opt);
    CHECK_THAT(r.p_flip_final, WithinAbs(analytic::lz_generalized(0.04, 1.0), 1e-3));
    CHECK(r.trace_residual < 1e-9);
    CHECK(r.hermiticity_residual < 1e-9);
    CHECK(r.min_qubit_eigenvalue > -1e-9);
    REQUIRE(r.times.size() == 401);
    CHECK(r.times.front() == -200.0);
    CHECK(r.times.back() == 200.0);
    for (std::size_t i = 0; i < r.times.size(); ++i) CHECK_THAT(r.p_up[i] + r.p_down[i], WithinAbs(1.0, 1e-9));
    CHECK(r.p_up_n(0).size() == 401);
    CHECK(r.p_down_n(1).size() == 401);
    CHECK_THAT(r.p_flip_final, WithinAbs(r.p_down.back(), 1e-12));
}

TEST_CASE("step underflow surfaces as a solver error") {
    SystemParams p = make_params(0.04, 1.0, 0.0, 0.0);
    p.n_trunc = 4;
    p.t_start = -50.0;
    p.t_end = 50.0;
    IntegrateOptions opt;
    opt.samples = 3;
    opt.ode.min_step = 0.1;
    opt.ode.initial_step = 1e-3;
    CHECK_THROWS_AS(integrate(validate(p), opt), SolverError);
}

TEST_CASE("sample grid") {
    const auto g = sample_grid(-1.0, 1.0, 5);
    CHECK(g == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
    CHECK_THROWS_AS(sample_grid(0.0, 1.0, 1), std::invalid_argument);
}
