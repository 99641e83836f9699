#include <catch_amalgamated.hpp>

#include <cmath>

#include "lzqed/ode.hpp"

using namespace lzqed;
using Catch::Matchers::WithinAbs;

TEST_CASE("exponential decay") {
    Eigen::VectorXd y0(1);
    y0 << 1.0;
    std::vector<double> samples;
    for (int i = 0; i <= 50; ++i) samples.push_back(0.1 * i);
    std::vector<double> got;
    const auto stats = integrate_dp45([](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = -y; }, 0.0, y0,
                                      samples, [&](double, const Eigen::VectorXd& y) { got.push_back(y[0]); });
    REQUIRE(got.size() == samples.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK_THAT(got[i], WithinAbs(std::exp(-samples[i]), 1e-8));
    CHECK(stats.accepted > 0);
    CHECK(stats.rhs_calls >= 6 * stats.accepted);
}

TEST_CASE("complex rotation keeps its modulus and phase") {
    Eigen::VectorXcd y0(2);
    y0 << 1.0, std::complex<double>(0.0, 1.0);
    const double w = 3.0;
    std::vector<double> samples{0.0, 1.0, 7.5, 20.0};
    std::vector<Eigen::VectorXcd> got;
    OdeOptions opt;
    opt.rtol = 1e-10;
    opt.atol = 1e-12;
    integrate_dp45(
        [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { dy = std::complex<double>(0.0, -w) * y; }, 0.0,
        y0, samples, [&](double, const Eigen::VectorXcd& y) { got.push_back(y); }, opt);
    REQUIRE(got.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto phase = std::exp(std::complex<double>(0.0, -w * samples[i]));
        CHECK(std::abs(got[i][0] - phase) < 1e-8);
        CHECK(std::abs(got[i][1] - std::complex<double>(0.0, 1.0) * phase) < 1e-8);
    }
}

TEST_CASE("harmonic oscillator with dense output between steps") {
    Eigen::VectorXd y0(2);
    y0 << 1.0, 0.0;
    std::vector<double> samples;
    for (int i = 0; i <= 1000; ++i) samples.push_back(0.01 * i);
    double worst = 0.0;
    integrate_dp45(
        [](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
            dy[0] = y[1];
            dy[1] = -y[0];
        },
        0.0, y0, samples,
        [&](double t, const Eigen::VectorXd& y) {
            worst = std::max({worst, std::abs(y[0] - std::cos(t)), std::abs(y[1] + std::sin(t))});
        });
    CHECK(worst < 1e-7);
}

TEST_CASE("time-dependent right-hand side lands on the final time") {
    Eigen::VectorXd y0(1);
    y0 << 0.0;
    double last_t = -1.0, last_y = 0.0;
    integrate_dp45([](double t, const Eigen::VectorXd&, Eigen::VectorXd& dy) { dy.resize(1); dy[0] = std::cos(t); }, 0.0,
                   y0, std::vector<double>{3.3}, [&](double t, const Eigen::VectorXd& y) {
                       last_t = t;
                       last_y = y[0];
                   });
    CHECK(last_t == 3.3);
    CHECK_THAT(last_y, WithinAbs(std::sin(3.3), 1e-8));
}

TEST_CASE("samples at the start time are reported unchanged") {
    Eigen::VectorXd y0(1);
    y0 << 2.0;
    std::vector<double> seen;
    integrate_dp45([](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = y; }, 1.0, y0,
                   std::vector<double>{1.0, 1.0}, [&](double, const Eigen::VectorXd& y) { seen.push_back(y[0]); });
    CHECK(seen == std::vector<double>{2.0, 2.0});
}

TEST_CASE("finite-time blow-up underflows the step") {
    Eigen::VectorXd y0(1);
    y0 << 1.0;
    auto run = [&] {
        integrate_dp45([](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = y.array().square(); }, 0.0, y0,
                       std::vector<double>{2.0}, [](double, const Eigen::VectorXd&) {});
    };
    CHECK_THROWS_AS(run(), StepUnderflow);
}

TEST_CASE("samples before the start are rejected") {
    Eigen::VectorXd y0(1);
    y0 << 1.0;
    CHECK_THROWS_AS(integrate_dp45([](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) { dy = y; }, 1.0, y0,
                                   std::vector<double>{0.5}, [](double, const Eigen::VectorXd&) {}),
                    std::invalid_argument);
}
