// observables.hpp: eigenfunctions of the damped-oscillator Liouvillian and
// expectation values of a CoefficientState
//
// Phase-space variables are the Weyl symbols x of X = a + a^+ and p of
// P = i(a^+ - a), so the vacuum has <x^2> = <p^2> = 1 and Tr(O rho) = int O W.
// Polynomials are stored in scaled variables u = x / sigma_x, w = p / sigma_p
// where sigma_x^2 = D and sigma_p^2 = Dpp are the stationary variances.

#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "lzqed/bath.hpp"
#include "lzqed/hermite_series.hpp"
#include "lzqed/quadrature.hpp"

namespace lzqed {

class CoefficientState;

struct GaussianWidths {
    double var_x{1.0};
    double var_p{1.0};
    double sigma_x() const { return std::sqrt(var_x); }
    double sigma_p() const { return std::sqrt(var_p); }
};

GaussianWidths stationary_widths(const DiffusionCoefficients& coeffs);

/// Right eigenfunction: poly(x/sigma_x, p/sigma_p) times the normalized stationary Gaussian.
struct PhasePolynomialGaussian {
    HermiteSeries poly;
    GaussianWidths widths;

    cplx operator()(double x, double p) const;
    int degree() const { return poly.degree(1e-300); }
};

/// Left eigenfunction: a bare polynomial in the same scaled variables.
struct PhasePolynomial {
    HermiteSeries poly;
    GaussianWidths widths;

    cplx operator()(double x, double p) const;
    int degree() const { return poly.degree(1e-300); }
};

PhasePolynomialGaussian right_eigenfunction(int n, int n_conj, const EigenbasisSpec& spec,
                                            const DiffusionCoefficients& coeffs);
PhasePolynomial left_eigenfunction(int n, int n_conj, const EigenbasisSpec& spec,
                                   const DiffusionCoefficients& coeffs);

/// Exact biorthogonality integral of a left and a right eigenfunction.
cplx pair(const PhasePolynomial& left, const PhasePolynomialGaussian& right);

/// All right and left eigenfunctions with n, n' < size.
class EigenBasis {
public:
    EigenBasis(const EigenbasisSpec& spec, const DiffusionCoefficients& coeffs, int size);

    int size() const noexcept { return size_; }
    const EigenbasisSpec& spec() const noexcept { return spec_; }
    const GaussianWidths& widths() const noexcept { return widths_; }
    const PhasePolynomialGaussian& right(int n, int n_conj) const { return right_[index(n, n_conj)]; }
    const PhasePolynomial& left(int n, int n_conj) const { return left_[index(n, n_conj)]; }

    /// Gram matrix over the pairs with n + n' <= max_degree, ordered by (n, n').
    Eigen::MatrixXcd gram(int max_degree) const;

private:
    std::size_t index(int n, int n_conj) const;

    EigenbasisSpec spec_;
    GaussianWidths widths_;
    int size_;
    std::vector<PhasePolynomialGaussian> right_;
    std::vector<PhasePolynomial> left_;
};

using PhaseSymbol = std::function<cplx(double x, double p)>;

/// int O(x, p) phi_nn'(x, p) dx dp by adaptive Gauss-Hermite quadrature.
cplx weyl_weight(const PhaseSymbol& symbol, const PhasePolynomialGaussian& right, double tol = 1e-10,
                 QuadratureReport* report = nullptr);

/// Same, for every right eigenfunction of the basis at once (size x size table).
Eigen::MatrixXcd weyl_weights(const PhaseSymbol& symbol, const EigenBasis& basis, double tol = 1e-10,
                              QuadratureReport* report = nullptr);

/// 2 (-1)^k L_k(x^2 + p^2) exp(-(x^2 + p^2)/2).
double fock_projector_symbol(int k, double x, double p);

/// Weights of |k><k| against every right eigenfunction, k = 0..max_fock.
class FockWeightTable {
public:
    FockWeightTable(const EigenBasis& basis, int max_fock, double tol = 1e-10);

    int max_fock() const noexcept { return int(weights_.size()) - 1; }
    const Eigen::MatrixXcd& weights(int k) const { return weights_.at(k); }
    const QuadratureReport& report() const noexcept { return report_; }

private:
    std::vector<Eigen::MatrixXcd> weights_;
    QuadratureReport report_;
};

enum class Spin { Up = 0, Down = 1 };

/// sum_nn' O_nn' c_nn'^{ss} for the given spin s and Fock level k.
double fock_population(const CoefficientState& state, const FockWeightTable& table, Spin spin, int k);

/// sum_nn' O_nn' tr c_nn' for a weight table O.
cplx expectation(const CoefficientState& state, const Eigen::MatrixXcd& weights);

/// Weyl quantization of polynomials in (u, w) as matrices in the Fock basis,
/// using Q(u s) = {X, Q(s)} / (2 sigma_x) and Q(w s) = {P, Q(s)} / (2 sigma_p).
/// Matrices are exact in their top-left dim x dim block for degree <= max_degree.
class WeylQuantizer {
public:
    WeylQuantizer(const GaussianWidths& widths, int dim, int max_degree);

    int dim() const noexcept { return dim_; }
    /// Q(He_a(u) He_b(w)), truncated to dim x dim.
    const Eigen::MatrixXcd& hermite_term(int a, int b) const;
    Eigen::MatrixXcd quantize(const HermiteSeries& poly) const;

private:
    int dim_;
    int max_degree_;
    std::vector<Eigen::MatrixXcd> terms_;  // indexed a * (max_degree + 1) + b
};

/// Fock-basis ladder matrices of size dim.
Eigen::MatrixXcd quadrature_x(int dim);
Eigen::MatrixXcd quadrature_p(int dim);

}  // namespace lzqed
