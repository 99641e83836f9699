// fock_oracle.hpp: brute-force reference solvers in the truncated Fock basis
//
// Basis ordering {|up,0>..|up,N-1>, |down,0>..|down,N-1>}. Operators are built
// from truncated ladder matrices; nothing here touches the phase-space code.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

#include "lzqed/observables.hpp"
#include "lzqed/ode.hpp"
#include "lzqed/params.hpp"
#include "lzqed/phase_space.hpp"

namespace lzqed {

class EigenBasis;
class WeylQuantizer;

struct FockDensityMatrix {
    Eigen::MatrixXcd rho;  // 2N x 2N
    double t{0.0};

    int n_trunc() const { return int(rho.rows()) / 2; }
    /// Oscillator operator <i| rho |j> for qubit indices i, j.
    Eigen::MatrixXcd qubit_block(int i, int j) const;
    Eigen::Matrix2cd qubit_reduced() const;
    double population(Spin spin, int n) const;
};

/// Operators of the qubit + oscillator model.
struct FockOperators {
    int n{0};
    Eigen::MatrixXcd x, p, number;          // oscillator, N x N
    Eigen::MatrixXcd big_x, big_p;          // 1 (x) X, 1 (x) P
    Eigen::MatrixXcd sigma_x, sigma_z;      // sigma (x) 1
    Eigen::MatrixXcd h_static;              // g sigma_x X + a^+ a
};

FockOperators make_fock_operators(int n_trunc, double g);

/// Hamiltonian at time t: (v t / 2) sigma_z + g sigma_x X + a^+ a.
Eigen::MatrixXcd fock_hamiltonian(const FockOperators& ops, double v, double t);

/// |up><up| (x) truncated thermal state, renormalized.
FockDensityMatrix thermal_initial_state(int n_trunc, double temperature, double t);

struct UnitaryResult {
    /// probabilities[k] = |<spin,m|U|up,n>|^2 with k = spin * N + m
    Eigen::VectorXd probabilities;
    double norm_drift{0.0};
    long steps{0};
};

/// Full propagator over the sweep window by fourth-order Magnus steps of at most
/// max_step; requires gamma = 0. norm_drift is max |U^+ U - 1|.
struct UnitaryPropagator {
    Eigen::MatrixXcd u;
    double norm_drift{0.0};
    long steps{0};
};

UnitaryPropagator unitary_propagator(const ValidatedParams& params, double max_step = 0.1);

/// Propagation of |up, initial_n>; throws SolverError when the norm drifts by more than 1e-8.
UnitaryResult unitary_propagate(int initial_n, const ValidatedParams& params, double max_step = 0.1);

/// The master equation d rho/dt = L(t) rho as sparse superoperators on column-major vec(rho):
/// L(t) = static + (v t) bias + Dsigma(v t) force.
struct RedfieldSuperoperator {
    Eigen::SparseMatrix<cplx> fixed;
    Eigen::SparseMatrix<cplx> bias;
    Eigen::SparseMatrix<cplx> force;
    SystemParams params;
    double dpp{1.0};
    double dxp{0.0};

    void apply(double t, const Eigen::VectorXcd& vec_rho, Eigen::VectorXcd& out) const;
};

RedfieldSuperoperator make_redfield(const ValidatedParams& params);

/// Direct matrix form of the same equation, for cross-checking the superoperator.
Eigen::MatrixXcd redfield_rhs_matrix(double t, const Eigen::MatrixXcd& rho, const FockOperators& ops,
                                     const SystemParams& params, double dpp, double dxp);

struct RedfieldResult {
    std::vector<double> times;
    std::vector<double> p_up;
    std::vector<FockDensityMatrix> states;  // filled when requested
    double trace_residual{0.0};
    double hermiticity_residual{0.0};
    OdeStats stats{};
};

/// Integrates from t_start to t_end, sampling `samples` uniform points.
RedfieldResult redfield_propagate(const ValidatedParams& params, int samples = 2001, bool keep_states = false,
                                  const OdeOptions& ode = {});

/// Same, starting from an arbitrary state at params.t_start.
RedfieldResult redfield_propagate(const ValidatedParams& params, const FockDensityMatrix& initial, int samples,
                                  bool keep_states, const OdeOptions& ode = {});

/// c_nn'^{ij} = Tr(Psi_nn' rho_ij) with Psi the Weyl quantization of the left eigenfunctions.
CoefficientState map_to_eigenbasis(const FockDensityMatrix& rho, const EigenBasis& basis, const WeylQuantizer& quantizer);
CoefficientState map_to_eigenbasis(const FockDensityMatrix& rho, const EigenBasis& basis);

}  // namespace lzqed
