#include "lzqed/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lzqed {

namespace {

constexpr double pi = std::numbers::pi;

// w coth(w / 2T), with the T = 0 limit |w| and the small-argument limit 2T (1 + u^2/3).
double thermal_energy(double w, double temperature) {
    if (temperature == 0.0) return std::abs(w);
    const double u = w / (2.0 * temperature);
    if (std::abs(u) < 1e-4) return 2.0 * temperature * (1.0 + u * u / 3.0);
    return w / std::tanh(u);
}

// Matsubara summand after partial fractions, nu >= 0.
double matsubara_term(double nu, double cutoff) { return 1.0 / (nu + cutoff) - nu / (nu * nu + 1.0); }

// Sum over n = 1..m of matsubara_term(c n) plus the Euler-Maclaurin estimate of n > m.
double matsubara_partial(double c, double cutoff, long m) {
    double sum = 0.0;
    for (long n = m; n >= 1; --n) sum += matsubara_term(c * double(n), cutoff);
    const double x = double(m) + 0.5;
    const double cx = c * x;
    const double integral = -(std::log(cx + cutoff) - 0.5 * std::log(cx * cx + 1.0)) / c;
    const double slope = -c / ((cx + cutoff) * (cx + cutoff)) - c * (1.0 - cx * cx) / ((cx * cx + 1.0) * (cx * cx + 1.0));
    return sum + integral + slope / 24.0;
}

}  // namespace

double dpp(double temperature) {
    if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
    if (temperature == 0.0) return 1.0;
    return 1.0 / std::tanh(0.5 / temperature);
}

DxpValue dxp(double temperature, double drude_cutoff, int matsubara_terms, DxpPolicy policy) {
    if (policy == DxpPolicy::Zero) return {0.0, true};
    if (!(drude_cutoff > 0.0)) throw std::invalid_argument("drude_cutoff must be > 0");
    if (matsubara_terms < 1) throw std::invalid_argument("matsubara_terms must be >= 1");
    if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");

    const double wd2 = drude_cutoff * drude_cutoff;
    // The T -> 0 limit turns the sum into an integral with a closed form.
    if (temperature == 0.0) return {-wd2 / (wd2 + 1.0) * std::log(drude_cutoff), true};

    const double c = 2.0 * pi * temperature;
    const double prefactor = c * wd2 / (2.0 * (wd2 + 1.0));
    const long m = matsubara_terms;
    const double s_full = matsubara_partial(c, drude_cutoff, m);
    const double s_half = matsubara_partial(c, drude_cutoff, std::max(1L, m / 2));
    const double total = prefactor * (1.0 / drude_cutoff + 2.0 * s_full);
    const double half = prefactor * (1.0 / drude_cutoff + 2.0 * s_half);
    const bool converged = std::abs(total - half) <= 1e-10 * std::max(1.0, std::abs(total));
    return {total, converged};
}

DiffusionCoefficients diffusion_coefficients(const SystemParams& params) {
    DiffusionCoefficients out;
    out.dpp = dpp(params.temperature);
    const auto cross = dxp(params.temperature, params.drude_cutoff, params.matsubara_terms, params.dxp_policy);
    out.dxp = cross.value;
    out.dxp_converged = cross.converged;
    out.d_combined = out.dpp + params.gamma * out.dxp;
    return out;
}

EigenbasisSpec eigenbasis_spec(double gamma, double d_combined) {
    if (gamma < 0.0 || gamma >= 2.0) throw std::invalid_argument("overdamped regime excluded (gamma must be < 2 omega)");
    const double freq = std::sqrt(1.0 - gamma * gamma / 4.0);
    EigenbasisSpec spec;
    spec.lambda = cplx(-gamma / 2.0, freq);
    spec.sigma_a = d_combined / (spec.lambda * spec.lambda - 1.0);
    spec.kappa = 1.0 / freq;
    return spec;
}

double dsigma(double omega_j, double temperature, double g) {
    if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
    const double w = std::abs(omega_j);
    const double eps = w - 1.0;
    if (std::abs(eps) >= 1e-3) {
        const double h_w = thermal_energy(w, temperature);
        const double h_1 = thermal_energy(1.0, temperature);
        return g * (h_w - h_1) / (2.0 * (1.0 - w * w));
    }
    // Removable singularity at |w| = 1: expand h(w) - h(1) to third order in eps.
    double d1 = 1.0, d2 = 0.0, d3 = 0.0;
    if (temperature > 0.0) {
        const double u = 0.5 / temperature;
        const double c = 1.0 / std::tanh(u);
        const double s = 1.0 / (std::sinh(u) * std::sinh(u));
        d1 = c - u * s;
        d2 = s * (u * c - 1.0) / temperature;
        d3 = s * (3.0 * c - 2.0 * u * c * c - u * s) / (2.0 * temperature * temperature);
    }
    return -g * (d1 + d2 * eps / 2.0 + d3 * eps * eps / 6.0) / (2.0 * (2.0 + eps));
}

IcIs ic_is(double a, double b, double t) {
    // Ic is even and Is odd in b, so reflect b onto the side of a before any series.
    if ((a >= 0.0) != (b >= 0.0) && b != 0.0 && a != 0.0) {
        const IcIs r = ic_is(a, -b, t);
        return {r.ic, -r.is};
    }
    if (std::abs(a) < 1e-6 && std::abs(b) < 1e-6) {
        // Leading small-frequency behaviour; exact 0 when a = b = 0.
        return {-a * t * t / 2.0, -a * b * t * t * t / 6.0};
    }
    const double delta = b - a;
    if (std::abs(delta) < 1e-6) {
        const double s = std::sin(a * t), c = std::cos(a * t);
        const double d1 = -t * s - t * t * c * delta / 2.0 + t * t * t * s * delta * delta / 6.0;
        const double d2 = t * c - t * t * s * delta / 2.0 - t * t * t * c * delta * delta / 6.0;
        return {a * d1 / (a + b), -(s - a * d2) / (a + b)};
    }
    const double denom = a * a - b * b;
    return {a * (std::cos(a * t) - std::cos(b * t)) / denom, (b * std::sin(a * t) - a * std::sin(b * t)) / denom};
}

}  // namespace lzqed
