// analytic.hpp: closed-form Landau-Zener results used as reference values

#pragma once

namespace lzqed::analytic {

/// Avoided crossing between |up,n> and |down,n+1>.
struct CrossingSplitting {
    int n{0};
    double delta{0.0};  // 2 g sqrt(n+1)
};

CrossingSplitting splitting(int n, double g);

/// Two-level Landau-Zener probability to stay diabatic, exp(-pi Delta^2 / 2v).
double standard_lz(double delta, double v);

/// Spin-flip probability 1 - exp(-2 pi g^2 / v) for the qubit-oscillator sweep at T = 0.
double lz_generalized(double g, double v);

/// Independent-crossing probability that |up,n> ends with the qubit up.
double path_prob_up(int n, double g, double v);

/// 1 - sum_{n<=n_max} p_n P(up,n -> up), Boltzmann weights p_n = e^{-n/T}(1 - e^{-1/T}).
double thermal_avg_direct(double g, double v, double temperature, int n_max);

/// ceil(40 T) + 10; keeps the neglected Boltzmann tail below 1e-17.
int default_n_max(double temperature);

/// B(x) = (1 - e^{-1/T}) / (1 - e^{-(1/T + 2 pi x)}), with B = 1 at T = 0.
double b_function(double x, double temperature);

/// Finite-temperature spin-flip probability in the independent-crossing picture.
double pud_finite_T(double g, double v, double temperature);

/// Effective dissipation strength (4/pi) g^2 gamma.
double alpha(double g, double gamma);

/// Peaked spectral density 2 alpha w / ((1 - w^2)^2 + (gamma w)^2) seen by the qubit.
double jeff_spectral_density(double omega_arg, double g, double gamma);

/// (1/pi) [arctan((2 - gamma^2) / (gamma sqrt(4 - gamma^2))) + pi/2]; 1 at gamma = 0.
double sum_ck2(double gamma);

/// Exact zero-temperature spin-flip probability with a damped oscillator.
double pud_zero_T_dissipative(double g, double v, double gamma);

}  // namespace lzqed::analytic
