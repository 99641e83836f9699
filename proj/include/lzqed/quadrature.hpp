// quadrature.hpp: Gauss-Hermite rules for the standard normal measure

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <vector>

namespace lzqed {

/// sum_i weights[i] f(nodes[i]) approximates E[f(Z)], Z ~ N(0, 1).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Golub-Welsch on the Jacobi matrix of the He polynomials.
GaussRule gauss_hermite(int order);

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureReport {
    int order{0};
    double last_change{0.0};
    bool converged{false};
};

/// Evaluates `table(rule)` at orders 16, 32, ... up to max_order until the largest entry
/// changes by less than tol. Throws QuadratureError if that never happens.
Eigen::MatrixXcd adaptive_gauss_table(const std::function<Eigen::MatrixXcd(const GaussRule&)>& table, double tol,
                                      int max_order = 512, QuadratureReport* report = nullptr);

}  // namespace lzqed
