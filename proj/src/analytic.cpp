#include "lzqed/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lzqed::analytic {

namespace {

constexpr double pi = std::numbers::pi;

void require_velocity(double v) {
    if (!(v > 0.0)) throw std::invalid_argument("sweep velocity must be > 0");
}

}  // namespace

CrossingSplitting splitting(int n, double g) {
    if (n < 0) throw std::invalid_argument("oscillator index must be >= 0");
    return {n, 2.0 * g * std::sqrt(n + 1.0)};
}

double standard_lz(double delta, double v) {
    require_velocity(v);
    if (delta < 0.0) throw std::invalid_argument("splitting must be >= 0");
    return std::exp(-pi * delta * delta / (2.0 * v));
}

double lz_generalized(double g, double v) {
    require_velocity(v);
    return -std::expm1(-2.0 * pi * g * g / v);
}

double path_prob_up(int n, double g, double v) {
    if (n < 0) throw std::invalid_argument("oscillator index must be >= 0");
    require_velocity(v);
    const double w_n = standard_lz(2.0 * g * std::sqrt(double(n)), v);
    const double w_up = standard_lz(2.0 * g * std::sqrt(n + 1.0), v);
    double p = w_n * w_up;
    // The lower path |up,n> -> |down,n-1> -> |up,n-2> needs n >= 1.
    if (n >= 1) {
        const double w_down = standard_lz(2.0 * g * std::sqrt(n - 1.0), v);
        p += (1.0 - w_n) * (1.0 - w_down);
    }
    return p;
}

double thermal_avg_direct(double g, double v, double temperature, int n_max) {
    require_velocity(v);
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
    if (temperature == 0.0) return 1.0 - path_prob_up(0, g, v);

    const double q = std::exp(-1.0 / temperature);
    const double norm = -std::expm1(-1.0 / temperature);
    double sum = 0.0;
    double weight = norm;
    for (int n = 0; n <= n_max; ++n) {
        sum += weight * path_prob_up(n, g, v);
        weight *= q;
    }
    return 1.0 - sum;
}

int default_n_max(double temperature) {
    return static_cast<int>(std::ceil(40.0 * temperature)) + 10;
}

double b_function(double x, double temperature) {
    if (x < 0.0) throw std::invalid_argument("B(x) needs x >= 0");
    if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
    if (temperature == 0.0) return 1.0;
    const double beta = 1.0 / temperature;
    return std::expm1(-beta) / std::expm1(-(beta + 2.0 * pi * x));
}

double pud_finite_T(double g, double v, double temperature) {
    require_velocity(v);
    const double x = g * g / v;
    const double b1 = b_function(x, temperature);
    const double b2 = b_function(2.0 * x, temperature);
    const double e = std::exp(2.0 * pi * x);
    return b1 - b2 / e + (b1 - b2) * e;
}

double alpha(double g, double gamma) { return 4.0 / pi * g * g * gamma; }

double jeff_spectral_density(double omega_arg, double g, double gamma) {
    if (omega_arg < 0.0) throw std::invalid_argument("spectral density needs omega >= 0");
    const double detune = 1.0 - omega_arg * omega_arg;
    return 2.0 * alpha(g, gamma) * omega_arg / (detune * detune + gamma * gamma * omega_arg * omega_arg);
}

double sum_ck2(double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (gamma >= 2.0) throw std::invalid_argument("overdamped regime excluded (gamma must be < 2 omega)");
    if (gamma == 0.0) return 1.0;
    const double arg = (2.0 - gamma * gamma) / (gamma * std::sqrt(4.0 - gamma * gamma));
    return (std::atan(arg) + pi / 2.0) / pi;
}

double pud_zero_T_dissipative(double g, double v, double gamma) {
    require_velocity(v);
    return -std::expm1(-2.0 * pi * g * g * sum_ck2(gamma) / v);
}

}  // namespace lzqed::analytic
