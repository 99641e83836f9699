#include "lzqed/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace lzqed {

namespace {

GaussRule compute_rule(int order) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(std::max(order - 1, 0));
    for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(double(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = solver.eigenvalues()[i];
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = v0 * v0;
    }
    return rule;
}

}  // namespace

GaussRule gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("Gauss-Hermite order must be >= 1");
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

Eigen::MatrixXcd adaptive_gauss_table(const std::function<Eigen::MatrixXcd(const GaussRule&)>& table, double tol,
                                      int max_order, QuadratureReport* report) {
    int order = 16;
    Eigen::MatrixXcd previous = table(gauss_hermite(order));
    double change = 0.0;
    while (2 * order <= max_order) {
        order *= 2;
        Eigen::MatrixXcd current = table(gauss_hermite(order));
        change = (current - previous).cwiseAbs().maxCoeff();
        previous = std::move(current);
        if (change < tol) {
            if (report) *report = {order, change, true};
            return previous;
        }
    }
    if (report) *report = {order, change, false};
    std::ostringstream os;
    os << "Gauss-Hermite quadrature did not converge: change " << change << " at order " << order;
    throw QuadratureError(os.str());
}

}  // namespace lzqed
