#include "lzqed/observables.hpp"

#include <numbers>
#include <stdexcept>

#include "lzqed/phase_space.hpp"

namespace lzqed {

namespace {

constexpr double pi = std::numbers::pi;

// Right raising operator d/dx + mu d/dp on poly * Gaussian, in Hermite coefficients.
HermiteSeries raise_right(const HermiteSeries& s, cplx mu, const GaussianWidths& wd) {
    return cplx(-1.0 / wd.sigma_x()) * s.raised_u() + (-mu / wd.sigma_p()) * s.raised_w();
}

// Adjoint of beta [-mu_conj (D d/dx + x) + (Dpp d/dp + p)] acting on a bare polynomial.
HermiteSeries raise_left(const HermiteSeries& s, cplx mu_conj, cplx beta, const GaussianWidths& wd) {
    return (-beta * mu_conj * wd.sigma_x()) * s.raised_u() + (beta * wd.sigma_p()) * s.raised_w();
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Gaussian moments E[O(sigma_x u, sigma_p w) He_a(u) He_b(w)] for a, b <= order, times
// every requested set of Hermite coefficients.
Eigen::MatrixXcd hermite_moments(const GaussRule& rule, const GaussianWidths& wd, int max_index,
                                 const std::function<cplx(double, double)>& symbol) {
    const int q = int(rule.nodes.size());
    Eigen::MatrixXd vander(q, max_index + 1);
    for (int i = 0; i < q; ++i) {
        const auto he = hermite_he(max_index, rule.nodes[i]);
        for (int a = 0; a <= max_index; ++a) vander(i, a) = he[a] * rule.weights[i];
    }
    Eigen::MatrixXcd grid(q, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) grid(i, j) = symbol(wd.sigma_x() * rule.nodes[i], wd.sigma_p() * rule.nodes[j]);
    return vander.transpose().cast<cplx>() * grid * vander.cast<cplx>();
}

cplx contract(const HermiteSeries& poly, const Eigen::MatrixXcd& moments) {
    const auto& c = poly.coeffs();
    cplx sum = 0.0;
    for (Eigen::Index a = 0; a < c.rows() && a < moments.rows(); ++a)
        for (Eigen::Index b = 0; b < c.cols() && b < moments.cols(); ++b) sum += c(a, b) * moments(a, b);
    return sum;
}

}  // namespace

GaussianWidths stationary_widths(const DiffusionCoefficients& coeffs) {
    if (!(coeffs.d_combined > 0.0) || !(coeffs.dpp > 0.0))
        throw std::invalid_argument("stationary variances must be positive");
    return {coeffs.d_combined, coeffs.dpp};
}

cplx PhasePolynomialGaussian::operator()(double x, double p) const {
    const double u = x / widths.sigma_x(), w = p / widths.sigma_p();
    const double gauss = std::exp(-0.5 * (u * u + w * w)) / (2.0 * pi * widths.sigma_x() * widths.sigma_p());
    return poly(u, w) * gauss;
}

cplx PhasePolynomial::operator()(double x, double p) const {
    return poly(x / widths.sigma_x(), p / widths.sigma_p());
}

PhasePolynomialGaussian right_eigenfunction(int n, int n_conj, const EigenbasisSpec& spec,
                                            const DiffusionCoefficients& coeffs) {
    if (n < 0 || n_conj < 0) throw std::invalid_argument("eigenfunction indices must be >= 0");
    const GaussianWidths wd = stationary_widths(coeffs);
    HermiteSeries s = HermiteSeries::constant(1.0);
    for (int k = 0; k < n; ++k) s = raise_right(s, spec.lambda, wd);
    for (int k = 0; k < n_conj; ++k) s = raise_right(s, std::conj(spec.lambda), wd);
    s *= 1.0 / (factorial(n) * factorial(n_conj));
    return {s, wd};
}

PhasePolynomial left_eigenfunction(int n, int n_conj, const EigenbasisSpec& spec, const DiffusionCoefficients& coeffs) {
    if (n < 0 || n_conj < 0) throw std::invalid_argument("eigenfunction indices must be >= 0");
    const GaussianWidths wd = stationary_widths(coeffs);
    const cplx lam = spec.lambda;
    const cplx beta = 1.0 / (std::conj(lam) - lam);
    HermiteSeries s = HermiteSeries::constant(1.0);
    for (int k = 0; k < n; ++k) s = raise_left(s, std::conj(lam), beta, wd);
    for (int k = 0; k < n_conj; ++k) s = raise_left(s, lam, std::conj(beta), wd);
    return {s, wd};
}

cplx pair(const PhasePolynomial& left, const PhasePolynomialGaussian& right) {
    if (left.widths.var_x != right.widths.var_x || left.widths.var_p != right.widths.var_p)
        throw std::invalid_argument("eigenfunctions built on different Gaussians");
    return left.poly.pair(right.poly);
}

EigenBasis::EigenBasis(const EigenbasisSpec& spec, const DiffusionCoefficients& coeffs, int size)
    : spec_(spec), widths_(stationary_widths(coeffs)), size_(size) {
    if (size < 1) throw std::invalid_argument("eigenbasis size must be >= 1");
    right_.reserve(std::size_t(size) * size);
    left_.reserve(std::size_t(size) * size);
    for (int n = 0; n < size; ++n)
        for (int m = 0; m < size; ++m) {
            right_.push_back(right_eigenfunction(n, m, spec, coeffs));
            left_.push_back(left_eigenfunction(n, m, spec, coeffs));
        }
}

std::size_t EigenBasis::index(int n, int n_conj) const {
    if (n < 0 || n_conj < 0 || n >= size_ || n_conj >= size_) throw std::out_of_range("eigenbasis index");
    return std::size_t(n) * size_ + n_conj;
}

Eigen::MatrixXcd EigenBasis::gram(int max_degree) const {
    std::vector<std::pair<int, int>> labels;
    for (int d = 0; d <= max_degree; ++d)
        for (int n = 0; n <= d; ++n)
            if (n < size_ && d - n < size_) labels.emplace_back(n, d - n);
    const auto k = Eigen::Index(labels.size());
    Eigen::MatrixXcd g(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            g(i, j) = pair(left(labels[i].first, labels[i].second), right(labels[j].first, labels[j].second));
    return g;
}

cplx weyl_weight(const PhaseSymbol& symbol, const PhasePolynomialGaussian& right, double tol, QuadratureReport* report) {
    const int max_index = std::max(0, int(std::max(right.poly.coeffs().rows(), right.poly.coeffs().cols())) - 1);
    auto table = [&](const GaussRule& rule) {
        Eigen::MatrixXcd out(1, 1);
        out(0, 0) = contract(right.poly, hermite_moments(rule, right.widths, max_index, symbol));
        return out;
    };
    return adaptive_gauss_table(table, tol, 512, report)(0, 0);
}

Eigen::MatrixXcd weyl_weights(const PhaseSymbol& symbol, const EigenBasis& basis, double tol, QuadratureReport* report) {
    const int n = basis.size();
    const int max_index = 2 * (n - 1);
    auto table = [&](const GaussRule& rule) {
        const Eigen::MatrixXcd moments = hermite_moments(rule, basis.widths(), max_index, symbol);
        Eigen::MatrixXcd out(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) out(a, b) = contract(basis.right(a, b).poly, moments);
        return out;
    };
    return adaptive_gauss_table(table, tol, 512, report);
}

double fock_projector_symbol(int k, double x, double p) {
    const double r2 = x * x + p * p;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return 2.0 * sign * laguerre(k, r2)[k] * std::exp(-0.5 * r2);
}

FockWeightTable::FockWeightTable(const EigenBasis& basis, int max_fock, double tol) {
    if (max_fock < 0) throw std::invalid_argument("max_fock must be >= 0");
    const int n = basis.size();
    const int max_index = 2 * (n - 1);
    const GaussianWidths wd = basis.widths();
    auto table = [&](const GaussRule& rule) {
        const int q = int(rule.nodes.size());
        Eigen::MatrixXd vander(q, max_index + 1);
        for (int i = 0; i < q; ++i) {
            const auto he = hermite_he(max_index, rule.nodes[i]);
            for (int a = 0; a <= max_index; ++a) vander(i, a) = he[a] * rule.weights[i];
        }
        // Laguerre values for all levels on the grid at once.
        std::vector<Eigen::MatrixXd> grids(max_fock + 1, Eigen::MatrixXd(q, q));
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                const double x = wd.sigma_x() * rule.nodes[i], p = wd.sigma_p() * rule.nodes[j];
                const double r2 = x * x + p * p;
                const auto lag = laguerre(max_fock, r2);
                const double g = 2.0 * std::exp(-0.5 * r2);
                for (int k = 0; k <= max_fock; ++k) grids[k](i, j) = ((k % 2 == 0) ? g : -g) * lag[k];
            }
        Eigen::MatrixXcd out(n, n * (max_fock + 1));
        for (int k = 0; k <= max_fock; ++k) {
            const Eigen::MatrixXcd moments = (vander.transpose() * grids[k] * vander).cast<cplx>();
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) out(a, k * n + b) = contract(basis.right(a, b).poly, moments);
        }
        return out;
    };
    const Eigen::MatrixXcd all = adaptive_gauss_table(table, tol, 512, &report_);
    for (int k = 0; k <= max_fock; ++k) weights_.push_back(all.middleCols(k * n, n));
}

double fock_population(const CoefficientState& state, const FockWeightTable& table, Spin spin, int k) {
    const Eigen::MatrixXcd& w = table.weights(k);
    const int n = std::min<int>(state.size(), int(w.rows()));
    const int s = int(spin);
    cplx sum = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sum += w(a, b) * state(a, b, s, s);
    return sum.real();
}

cplx expectation(const CoefficientState& state, const Eigen::MatrixXcd& weights) {
    const int n = std::min<int>(state.size(), int(weights.rows()));
    cplx sum = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sum += weights(a, b) * (state(a, b, 0, 0) + state(a, b, 1, 1));
    return sum;
}

Eigen::MatrixXcd quadrature_x(int dim) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) x(n, n + 1) = x(n + 1, n) = std::sqrt(n + 1.0);
    return x;
}

Eigen::MatrixXcd quadrature_p(int dim) {
    // i (a^+ - a): <n+1|P|n> = i sqrt(n+1), <n|P|n+1> = -i sqrt(n+1)
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        p(n + 1, n) = cplx(0.0, std::sqrt(n + 1.0));
        p(n, n + 1) = cplx(0.0, -std::sqrt(n + 1.0));
    }
    return p;
}

WeylQuantizer::WeylQuantizer(const GaussianWidths& widths, int dim, int max_degree)
    : dim_(dim), max_degree_(max_degree) {
    if (dim < 1 || max_degree < 0) throw std::invalid_argument("WeylQuantizer needs dim >= 1, max_degree >= 0");
    // Each Jordan product with X or P spreads truncation error by one level.
    const int work = dim + max_degree + 1;
    const Eigen::MatrixXcd x = quadrature_x(work);
    const Eigen::MatrixXcd p = quadrature_p(work);
    const int stride = max_degree + 1;
    std::vector<Eigen::MatrixXcd> full(std::size_t(stride) * stride);
    auto at = [&](int a, int b) -> Eigen::MatrixXcd& { return full[std::size_t(a) * stride + b]; };
    at(0, 0) = Eigen::MatrixXcd::Identity(work, work);
    for (int a = 0; a <= max_degree; ++a) {
        if (a > 0) {
            const Eigen::MatrixXcd& prev = at(a - 1, 0);
            at(a, 0) = (x * prev + prev * x) / (2.0 * widths.sigma_x());
            if (a >= 2) at(a, 0) -= double(a - 1) * at(a - 2, 0);
        }
        for (int b = 1; a + b <= max_degree; ++b) {
            const Eigen::MatrixXcd& prev = at(a, b - 1);
            at(a, b) = (p * prev + prev * p) / (2.0 * widths.sigma_p());
            if (b >= 2) at(a, b) -= double(b - 1) * at(a, b - 2);
        }
    }
    terms_.resize(full.size());
    for (int a = 0; a <= max_degree; ++a)
        for (int b = 0; a + b <= max_degree; ++b)
            terms_[std::size_t(a) * stride + b] = at(a, b).topLeftCorner(dim, dim);
}

const Eigen::MatrixXcd& WeylQuantizer::hermite_term(int a, int b) const {
    if (a < 0 || b < 0 || a + b > max_degree_) throw std::out_of_range("WeylQuantizer degree exceeded");
    return terms_[std::size_t(a) * (max_degree_ + 1) + b];
}

Eigen::MatrixXcd WeylQuantizer::quantize(const HermiteSeries& poly) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);
    const auto& c = poly.coeffs();
    for (Eigen::Index a = 0; a < c.rows(); ++a)
        for (Eigen::Index b = 0; b < c.cols(); ++b) {
            if (c(a, b) == cplx(0.0)) continue;
            out += c(a, b) * hermite_term(int(a), int(b));
        }
    return out;
}

}  // namespace lzqed
