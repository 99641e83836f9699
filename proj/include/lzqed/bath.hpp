// bath.hpp: diffusion constants, qubit force and Liouvillian eigenvalue data

#pragma once

#include <complex>

#include "lzqed/params.hpp"

namespace lzqed {

using cplx = std::complex<double>;

struct DiffusionCoefficients {
    double dpp{1.0};         // momentum diffusion
    double dxp{0.0};         // cross diffusion
    double d_combined{1.0};  // dpp + gamma * dxp, equilibrium <X^2>
    bool dxp_converged{true};
};

/// Data of the damped-oscillator Liouvillian needed by the coefficient equations.
struct EigenbasisSpec {
    cplx lambda;     // -gamma/2 + i sqrt(1 - gamma^2/4)
    cplx sigma_a;    // D / (lambda^2 - 1)
    double kappa{};  // 1 / sqrt(1 - gamma^2/4)
};

/// coth(1/2T), 1 at T = 0.
double dpp(double temperature);

struct DxpValue {
    double value{0.0};
    bool converged{true};
};

/// Cross diffusion. Zero policy returns 0; MatsubaraSum sums the symmetric
/// series with n in [-terms, terms] plus an Euler-Maclaurin tail estimate.
DxpValue dxp(double temperature, double drude_cutoff, int matsubara_terms, DxpPolicy policy);

DiffusionCoefficients diffusion_coefficients(const SystemParams& params);

EigenbasisSpec eigenbasis_spec(double gamma, double d_combined);

/// Qubit-dependent force g [w coth(w/2T) - coth(1/2T)] / (2 (1 - w^2)) at w = v t.
double dsigma(double omega_j, double temperature, double g);

struct IcIs {
    double ic{0.0};
    double is{0.0};
};

/// Ic = a [cos at - cos bt]/(a^2 - b^2), Is = [b sin at - a sin bt]/(a^2 - b^2).
IcIs ic_is(double a, double b, double t);

}  // namespace lzqed
