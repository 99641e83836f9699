#include "lzqed/hermite_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lzqed {

namespace {

Eigen::MatrixXcd padded(const Eigen::MatrixXcd& m, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(std::max(rows, m.rows()), std::max(cols, m.cols()));
    out.topLeftCorner(m.rows(), m.cols()) = m;
    return out;
}

}  // namespace

HermiteSeries::HermiteSeries(Eigen::MatrixXcd coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() == 0 || coeffs_.cols() == 0) coeffs_ = Eigen::MatrixXcd::Zero(1, 1);
}

HermiteSeries HermiteSeries::constant(cplx value) {
    Eigen::MatrixXcd c(1, 1);
    c(0, 0) = value;
    return HermiteSeries(c);
}

cplx HermiteSeries::coeff(int a, int b) const {
    if (a < 0 || b < 0 || a >= coeffs_.rows() || b >= coeffs_.cols()) return 0.0;
    return coeffs_(a, b);
}

int HermiteSeries::degree(double cutoff) const {
    int best = -1;
    for (Eigen::Index a = 0; a < coeffs_.rows(); ++a)
        for (Eigen::Index b = 0; b < coeffs_.cols(); ++b)
            if (std::abs(coeffs_(a, b)) > cutoff) best = std::max(best, int(a + b));
    return best;
}

HermiteSeries HermiteSeries::raised_u() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(coeffs_.rows() + 1, coeffs_.cols());
    out.bottomRows(coeffs_.rows()) = coeffs_;
    return HermiteSeries(out);
}

HermiteSeries HermiteSeries::raised_w() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(coeffs_.rows(), coeffs_.cols() + 1);
    out.rightCols(coeffs_.cols()) = coeffs_;
    return HermiteSeries(out);
}

HermiteSeries HermiteSeries::conj() const { return HermiteSeries(coeffs_.conjugate()); }

HermiteSeries& HermiteSeries::operator+=(const HermiteSeries& other) {
    coeffs_ = padded(coeffs_, other.coeffs_.rows(), other.coeffs_.cols());
    coeffs_.topLeftCorner(other.coeffs_.rows(), other.coeffs_.cols()) += other.coeffs_;
    return *this;
}

HermiteSeries& HermiteSeries::operator*=(cplx s) {
    coeffs_ *= s;
    return *this;
}

cplx HermiteSeries::operator()(double u, double w) const {
    const auto hu = hermite_he(int(coeffs_.rows()) - 1, u);
    const auto hw = hermite_he(int(coeffs_.cols()) - 1, w);
    cplx sum = 0.0;
    for (Eigen::Index a = 0; a < coeffs_.rows(); ++a) {
        cplx row = 0.0;
        for (Eigen::Index b = 0; b < coeffs_.cols(); ++b) row += coeffs_(a, b) * hw[b];
        sum += row * hu[a];
    }
    return sum;
}

cplx HermiteSeries::pair(const HermiteSeries& other) const {
    // E[He_a He_c] = a! delta_ac under the standard normal measure.
    const Eigen::Index rows = std::min(coeffs_.rows(), other.coeffs_.rows());
    const Eigen::Index cols = std::min(coeffs_.cols(), other.coeffs_.cols());
    cplx sum = 0.0;
    double fa = 1.0;
    for (Eigen::Index a = 0; a < rows; ++a) {
        if (a > 0) fa *= double(a);
        double fb = 1.0;
        for (Eigen::Index b = 0; b < cols; ++b) {
            if (b > 0) fb *= double(b);
            sum += coeffs_(a, b) * other.coeffs_(a, b) * (fa * fb);
        }
    }
    return sum;
}

std::vector<double> hermite_he(int order, double x) {
    if (order < 0) return {};
    std::vector<double> h(order + 1);
    h[0] = 1.0;
    if (order >= 1) h[1] = x;
    for (int k = 1; k < order; ++k) h[k + 1] = x * h[k] - k * h[k - 1];
    return h;
}

std::vector<double> hermite_he_derivative(int order, double x) {
    if (order < 0) return {};
    const auto h = hermite_he(order, x);
    std::vector<double> d(order + 1, 0.0);
    for (int k = 1; k <= order; ++k) d[k] = k * h[k - 1];
    return d;
}

std::vector<double> laguerre(int order, double x) {
    if (order < 0) return {};
    std::vector<double> l(order + 1);
    l[0] = 1.0;
    if (order >= 1) l[1] = 1.0 - x;
    for (int k = 1; k < order; ++k) l[k + 1] = ((2.0 * k + 1.0 - x) * l[k] - k * l[k - 1]) / (k + 1.0);
    return l;
}

}  // namespace lzqed
