// hermite_series.hpp: bivariate polynomials in the probabilists' Hermite basis
//
// A series is sum_ab c(a, b) He_a(u) He_b(w). Multiplication by (u - d/du)
// raises the u index by one, which is all the eigenfunction algebra needs.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace lzqed {

using cplx = std::complex<double>;

class HermiteSeries {
public:
    HermiteSeries() : coeffs_(Eigen::MatrixXcd::Zero(1, 1)) {}
    explicit HermiteSeries(Eigen::MatrixXcd coeffs);

    static HermiteSeries constant(cplx value);

    const Eigen::MatrixXcd& coeffs() const noexcept { return coeffs_; }
    cplx coeff(int a, int b) const;

    /// Highest a + b with a coefficient above `cutoff` in modulus; -1 for the zero series.
    int degree(double cutoff = 0.0) const;

    /// (u - d/du) applied to the series.
    HermiteSeries raised_u() const;
    /// (w - d/dw) applied to the series.
    HermiteSeries raised_w() const;

    HermiteSeries conj() const;

    HermiteSeries& operator+=(const HermiteSeries& other);
    HermiteSeries& operator*=(cplx s);
    friend HermiteSeries operator+(HermiteSeries a, const HermiteSeries& b) { return a += b; }
    friend HermiteSeries operator*(cplx s, HermiteSeries a) { return a *= s; }

    cplx operator()(double u, double w) const;

    /// Integral of this * other against the standard normal measure in u and w.
    cplx pair(const HermiteSeries& other) const;

private:
    Eigen::MatrixXcd coeffs_;
};

/// He_0(x) .. He_order(x) by the three-term recurrence.
std::vector<double> hermite_he(int order, double x);

/// Derivative of He_k is k He_{k-1}; values He'_0 .. He'_order.
std::vector<double> hermite_he_derivative(int order, double x);

/// Laguerre L_0(x) .. L_order(x).
std::vector<double> laguerre(int order, double x);

}  // namespace lzqed
