// phase_space.hpp: coefficient equations of motion in the Liouvillian eigenbasis
//
// The Wigner function of qubit + oscillator is W = sum_nn' c_nn' phi_nn' with 2x2
// qubit matrices c_nn' (row/column 0 = up, 1 = down).

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "lzqed/bath.hpp"
#include "lzqed/ode.hpp"
#include "lzqed/params.hpp"

namespace lzqed {

class CoefficientState {
public:
    explicit CoefficientState(int n_trunc = 1, double t = 0.0);

    int size() const noexcept { return n_; }
    double time() const noexcept { return t_; }
    void set_time(double t) noexcept { t_ = t; }

    Eigen::VectorXcd& data() noexcept { return data_; }
    const Eigen::VectorXcd& data() const noexcept { return data_; }

    static Eigen::Index offset(int n_trunc, int n, int n_conj) { return (Eigen::Index(n) * n_trunc + n_conj) * 4; }

    cplx& operator()(int n, int n_conj, int i, int j) { return data_[offset(n_, n, n_conj) + 2 * i + j]; }
    cplx operator()(int n, int n_conj, int i, int j) const { return data_[offset(n_, n, n_conj) + 2 * i + j]; }

    Eigen::Matrix2cd block(int n, int n_conj) const;
    void set_block(int n, int n_conj, const Eigen::Matrix2cd& m);

private:
    int n_;
    double t_;
    Eigen::VectorXcd data_;
};

/// Everything the right-hand side needs besides the state.
struct SolverModel {
    SystemParams params;
    DiffusionCoefficients diffusion;
    EigenbasisSpec spec;
};

SolverModel make_model(const ValidatedParams& params);

/// Qubit up, oscillator in the stationary (thermal) Gaussian: c_00 = |up><up|.
CoefficientState initial_state(const ValidatedParams& params);

/// Which ladder structure the right-hand side uses. Consistent is the form that
/// reproduces the operator master equation; AsPrinted keeps the alternative sign
/// and prefactor placement and exists only for comparison.
enum class RhsForm { Consistent, AsPrinted };

/// dc/dt at time t; `out` must have the same size as `state`. The consistent form computes
/// blocks with n <= n' and mirrors the rest, so it returns an exactly Hermitian derivative.
/// `state` must be Hermitian (c_{n'n} = c_{nn'}^dagger).
void rhs(double t, const Eigen::VectorXcd& state, const SolverModel& model, Eigen::VectorXcd& out,
         RhsForm form = RhsForm::Consistent);

CoefficientState rhs(const CoefficientState& state, const SolverModel& model, RhsForm form = RhsForm::Consistent);

/// Exact d p_up / dt from the c_00 equation.
double p_up_rate(double t, const CoefficientState& state, const SolverModel& model);

/// (c_00 + c_00^+)/2.
Eigen::Matrix2cd qubit_reduced(const CoefficientState& state);

double trace_residual(const CoefficientState& state);
/// max |c_nn'^{ij} - conj(c_n'n^{ji})|.
double hermiticity_residual(const CoefficientState& state);
/// Largest coefficient on the truncation edge n = N-1 or n' = N-1.
double spill(const CoefficientState& state);

struct IntegrateOptions {
    int samples{2001};
    OdeOptions ode{};
    int fock_levels{2};           // record populations of n = 0..fock_levels-1 for both spins
    double invariant_tol{1e-9};   // trace and hermiticity tolerance
    double abort_factor{10.0};    // abort when an invariant exceeds abort_factor * invariant_tol
    bool keep_states{false};      // store the full state at every sample
};

struct SweepResult {
    std::vector<double> times;
    std::vector<double> p_up;
    std::vector<double> p_down;
    std::vector<double> p_up_rate;
    /// p_fock[level][sample], levels 0..fock_levels-1 with spin up, then the same with spin down.
    std::vector<std::vector<double>> p_fock;
    std::vector<double> trace_residuals;
    std::vector<double> herm_residuals;
    std::vector<CoefficientState> states;
    double trace_residual{0.0};
    double hermiticity_residual{0.0};
    double max_spill{0.0};
    double min_qubit_eigenvalue{1.0};
    double p_flip_final{0.0};
    OdeStats stats{};
    int fock_levels{0};

    const std::vector<double>& p_up_n(int n) const { return p_fock.at(n); }
    const std::vector<double>& p_down_n(int n) const { return p_fock.at(fock_levels + n); }
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integrates from t_start to t_end with Dormand-Prince 5(4). Throws SolverError on step
/// underflow or when an invariant leaves its abort band.
SweepResult integrate(const ValidatedParams& params, const IntegrateOptions& options = {});

/// Uniform grid of `count` points over [t_start, t_end].
std::vector<double> sample_grid(double t_start, double t_end, int count);

}  // namespace lzqed
