#include "lzqed/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lzqed/bath.hpp"
#include "lzqed/observables.hpp"

namespace lzqed {

namespace {

using Sparse = Eigen::SparseMatrix<cplx>;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Sparse to_sparse(const Eigen::MatrixXcd& m) {
    Sparse s = m.sparseView(1.0, 1e-300);
    s.makeCompressed();
    return s;
}

// vec(A rho B) = (B^T (x) A) vec(rho)
Sparse left_mul(const Eigen::MatrixXcd& a) {
    return to_sparse(kron(Eigen::MatrixXcd::Identity(a.rows(), a.cols()), a));
}
Sparse right_mul(const Eigen::MatrixXcd& b) {
    return to_sparse(kron(b.transpose(), Eigen::MatrixXcd::Identity(b.rows(), b.cols())));
}
Sparse commutator(const Eigen::MatrixXcd& a) { return left_mul(a) - right_mul(a); }
Sparse anticommutator(const Eigen::MatrixXcd& a) { return left_mul(a) + right_mul(a); }

void require_truncation(int n) {
    if (n < 2) throw std::invalid_argument("Fock truncation must be >= 2");
}

}  // namespace

Eigen::MatrixXcd FockDensityMatrix::qubit_block(int i, int j) const {
    const int n = n_trunc();
    return rho.block(i * n, j * n, n, n);
}

Eigen::Matrix2cd FockDensityMatrix::qubit_reduced() const {
    Eigen::Matrix2cd q;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) q(i, j) = qubit_block(i, j).trace();
    return q;
}

double FockDensityMatrix::population(Spin spin, int n) const {
    const int s = int(spin);
    return rho(s * n_trunc() + n, s * n_trunc() + n).real();
}

FockOperators make_fock_operators(int n_trunc, double g) {
    require_truncation(n_trunc);
    FockOperators ops;
    ops.n = n_trunc;
    ops.x = Eigen::MatrixXcd::Zero(n_trunc, n_trunc);
    ops.p = Eigen::MatrixXcd::Zero(n_trunc, n_trunc);
    ops.number = Eigen::MatrixXcd::Zero(n_trunc, n_trunc);
    for (int k = 0; k < n_trunc; ++k) ops.number(k, k) = double(k);
    for (int k = 0; k + 1 < n_trunc; ++k) {
        const double s = std::sqrt(k + 1.0);
        // a|k+1> = s|k>; X = a + a^+, P = i (a^+ - a)
        ops.x(k, k + 1) = s;
        ops.x(k + 1, k) = s;
        ops.p(k + 1, k) = cplx(0.0, s);
        ops.p(k, k + 1) = cplx(0.0, -s);
    }
    const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
    const Eigen::MatrixXcd idn = Eigen::MatrixXcd::Identity(n_trunc, n_trunc);
    Eigen::MatrixXcd sx(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    ops.big_x = kron(id2, ops.x);
    ops.big_p = kron(id2, ops.p);
    ops.sigma_x = kron(sx, idn);
    ops.sigma_z = kron(sz, idn);
    ops.h_static = g * ops.sigma_x * ops.big_x + kron(id2, ops.number);
    return ops;
}

Eigen::MatrixXcd fock_hamiltonian(const FockOperators& ops, double v, double t) {
    return ops.h_static + (0.5 * v * t) * ops.sigma_z;
}

FockDensityMatrix thermal_initial_state(int n_trunc, double temperature, double t) {
    require_truncation(n_trunc);
    FockDensityMatrix out{Eigen::MatrixXcd::Zero(2 * n_trunc, 2 * n_trunc), t};
    double total = 0.0;
    std::vector<double> w(n_trunc, 0.0);
    for (int k = 0; k < n_trunc; ++k) {
        w[k] = temperature == 0.0 ? (k == 0 ? 1.0 : 0.0) : std::exp(-double(k) / temperature);
        total += w[k];
    }
    for (int k = 0; k < n_trunc; ++k) out.rho(k, k) = w[k] / total;
    return out;
}

UnitaryPropagator unitary_propagator(const ValidatedParams& params, double max_step) {
    const SystemParams& prm = params.params();
    if (prm.gamma != 0.0) throw std::invalid_argument("unitary propagation requires gamma = 0");
    if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be > 0");
    const int n = prm.n_trunc;
    const FockOperators ops = make_fock_operators(n, prm.g);
    const Eigen::Index dim = 2 * n;

    // Fourth-order Magnus step on the two Gauss-Legendre nodes; the exponent is
    // Hermitian, so each step is unitary up to rounding.
    const double span = prm.t_end - prm.t_start;
    const long steps = std::max(1L, long(std::ceil(span / max_step)));
    const double h = span / double(steps);
    const double c1 = 0.5 - std::sqrt(3.0) / 6.0, c2 = 0.5 + std::sqrt(3.0) / 6.0;
    const cplx comm_weight(0.0, -std::sqrt(3.0) / 12.0 * h * h);

    UnitaryPropagator out;
    out.u = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dim);
    Eigen::MatrixXcd k(dim, dim), step(dim, dim);
    for (long s = 0; s < steps; ++s) {
        const double t = prm.t_start + double(s) * h;
        const Eigen::MatrixXcd h1 = fock_hamiltonian(ops, prm.v, t + c1 * h);
        const Eigen::MatrixXcd h2 = fock_hamiltonian(ops, prm.v, t + c2 * h);
        k = (0.5 * h) * (h1 + h2) + comm_weight * (h2 * h1 - h1 * h2);
        eig.compute(k);
        const Eigen::VectorXcd phase = (cplx(0.0, -1.0) * eig.eigenvalues().cast<cplx>()).array().exp();
        step.noalias() = eig.eigenvectors() * phase.asDiagonal() * eig.eigenvectors().adjoint();
        out.u = step * out.u;
    }
    out.steps = steps;
    out.norm_drift = (out.u.adjoint() * out.u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
    return out;
}

UnitaryResult unitary_propagate(int initial_n, const ValidatedParams& params, double max_step) {
    const int n = params.params().n_trunc;
    if (initial_n < 0 || initial_n >= n) throw std::invalid_argument("initial Fock index outside the truncation");
    const UnitaryPropagator u = unitary_propagator(params, max_step);
    UnitaryResult res;
    res.probabilities = u.u.col(initial_n).cwiseAbs2();
    res.norm_drift = std::abs(res.probabilities.sum() - 1.0);
    res.steps = u.steps;
    if (res.norm_drift > 1e-8) {
        std::ostringstream os;
        os << "unitary propagation lost norm: drift " << res.norm_drift;
        throw SolverError(os.str());
    }
    return res;
}

void RedfieldSuperoperator::apply(double t, const Eigen::VectorXcd& vec_rho, Eigen::VectorXcd& out) const {
    const double bias_value = params.v * t;
    out.noalias() = fixed * vec_rho;
    out.noalias() += bias_value * (bias * vec_rho);
    if (params.gamma > 0.0) out.noalias() += dsigma(bias_value, params.temperature, params.g) * (force * vec_rho);
}

RedfieldSuperoperator make_redfield(const ValidatedParams& params) {
    const SystemParams& prm = params.params();
    const FockOperators ops = make_fock_operators(prm.n_trunc, prm.g);
    RedfieldSuperoperator l;
    l.params = prm;
    l.dpp = dpp(prm.temperature);
    l.dxp = dxp(prm.temperature, prm.drude_cutoff, prm.matsubara_terms, prm.dxp_policy).value;
    const cplx minus_i(0.0, -1.0);
    const double q = prm.gamma / 4.0;

    const Sparse comm_x = commutator(ops.big_x);
    Sparse fixed = minus_i * commutator(ops.h_static);
    fixed += (minus_i * q) * Sparse(comm_x * anticommutator(ops.big_p));
    fixed += cplx(-q * l.dpp) * Sparse(comm_x * comm_x);
    fixed += cplx(q * l.dxp) * Sparse(comm_x * commutator(ops.big_p));
    l.fixed = fixed;
    l.bias = (0.5 * minus_i) * commutator(ops.sigma_z);
    l.force = cplx(prm.gamma) * Sparse(comm_x * commutator(ops.sigma_x));
    l.fixed.makeCompressed();
    l.bias.makeCompressed();
    l.force.makeCompressed();
    return l;
}

Eigen::MatrixXcd redfield_rhs_matrix(double t, const Eigen::MatrixXcd& rho, const FockOperators& ops,
                                     const SystemParams& prm, double dpp_value, double dxp_value) {
    const cplx i(0.0, 1.0);
    auto comm = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) -> Eigen::MatrixXcd { return a * b - b * a; };
    auto anti = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) -> Eigen::MatrixXcd { return a * b + b * a; };
    const Eigen::MatrixXcd& x = ops.big_x;
    const Eigen::MatrixXcd& p = ops.big_p;
    const double q = prm.gamma / 4.0;
    const double force = prm.gamma > 0.0 ? dsigma(prm.v * t, prm.temperature, prm.g) : 0.0;
    Eigen::MatrixXcd out = -i * comm(fock_hamiltonian(ops, prm.v, t), rho);
    out += -i * q * comm(x, anti(p, rho));
    out += -q * dpp_value * comm(x, comm(x, rho));
    out += q * dxp_value * comm(x, comm(p, rho));
    out += prm.gamma * force * comm(x, comm(ops.sigma_x, rho));
    return out;
}

RedfieldResult redfield_propagate(const ValidatedParams& params, int samples, bool keep_states, const OdeOptions& ode) {
    const SystemParams& prm = params.params();
    return redfield_propagate(params, thermal_initial_state(prm.n_trunc, prm.temperature, prm.t_start), samples,
                              keep_states, ode);
}

RedfieldResult redfield_propagate(const ValidatedParams& params, const FockDensityMatrix& initial, int samples,
                                  bool keep_states, const OdeOptions& ode) {
    const SystemParams& prm = params.params();
    const int n = prm.n_trunc;
    if (initial.n_trunc() != n) throw std::invalid_argument("initial state size does not match n_trunc");
    const RedfieldSuperoperator l = make_redfield(params);
    const int dim = 2 * n;

    RedfieldResult res;
    res.times = sample_grid(prm.t_start, prm.t_end, samples);
    Eigen::VectorXcd y0 = Eigen::Map<const Eigen::VectorXcd>(initial.rho.data(), dim * dim);
    auto f = [&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        l.apply(t, y, dy);
        // The generator maps Hermitian to Hermitian; projecting away the rounding residue
        // keeps every stage exactly Hermitian.
        Eigen::Map<Eigen::MatrixXcd> m(dy.data(), dim, dim);
        for (int j = 0; j < dim; ++j) {
            m(j, j) = m(j, j).real();
            for (int i = j + 1; i < dim; ++i) {
                const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
                m(i, j) = avg;
                m(j, i) = std::conj(avg);
            }
        }
    };
    auto observe = [&](double t, const Eigen::VectorXcd& y) {
        FockDensityMatrix s{Eigen::Map<const Eigen::MatrixXcd>(y.data(), dim, dim), t};
        res.p_up.push_back(s.qubit_reduced()(0, 0).real());
        res.trace_residual = std::max(res.trace_residual, std::abs(s.rho.trace() - 1.0));
        res.hermiticity_residual = std::max(res.hermiticity_residual, (s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff());
        if (keep_states) res.states.push_back(std::move(s));
    };
    try {
        res.stats = integrate_dp45(f, prm.t_start, y0, res.times, observe, ode);
    } catch (const StepUnderflow& e) {
        throw SolverError(e.what());
    }
    return res;
}

CoefficientState map_to_eigenbasis(const FockDensityMatrix& rho, const EigenBasis& basis, const WeylQuantizer& quantizer) {
    const int n_osc = rho.n_trunc();
    if (quantizer.dim() != n_osc) throw std::invalid_argument("quantizer dimension does not match the density matrix");
    const int size = basis.size();
    CoefficientState out(size, rho.t);
    Eigen::MatrixXcd blocks[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) blocks[i][j] = rho.qubit_block(i, j);
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            const Eigen::MatrixXcd psi = quantizer.quantize(basis.left(a, b).poly);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) out(a, b, i, j) = (psi.transpose().cwiseProduct(blocks[i][j])).sum();
        }
    return out;
}

CoefficientState map_to_eigenbasis(const FockDensityMatrix& rho, const EigenBasis& basis) {
    const WeylQuantizer quantizer(basis.widths(), rho.n_trunc(), 2 * (basis.size() - 1));
    return map_to_eigenbasis(rho, basis, quantizer);
}

}  // namespace lzqed
