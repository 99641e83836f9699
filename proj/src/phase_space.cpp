#include "lzqed/phase_space.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>
#include <sstream>

#include "lzqed/observables.hpp"

namespace lzqed {

CoefficientState::CoefficientState(int n_trunc, double t)
    : n_(n_trunc), t_(t), data_(Eigen::VectorXcd::Zero(4 * Eigen::Index(n_trunc) * n_trunc)) {
    if (n_trunc < 1) throw std::invalid_argument("CoefficientState needs n_trunc >= 1");
}

Eigen::Matrix2cd CoefficientState::block(int n, int n_conj) const {
    const Eigen::Index o = offset(n_, n, n_conj);
    Eigen::Matrix2cd m;
    m << data_[o], data_[o + 1], data_[o + 2], data_[o + 3];
    return m;
}

void CoefficientState::set_block(int n, int n_conj, const Eigen::Matrix2cd& m) {
    const Eigen::Index o = offset(n_, n, n_conj);
    data_[o] = m(0, 0);
    data_[o + 1] = m(0, 1);
    data_[o + 2] = m(1, 0);
    data_[o + 3] = m(1, 1);
}

SolverModel make_model(const ValidatedParams& params) {
    SolverModel model;
    model.params = params.params();
    model.diffusion = diffusion_coefficients(model.params);
    model.spec = eigenbasis_spec(model.params.gamma, model.diffusion.d_combined);
    return model;
}

CoefficientState initial_state(const ValidatedParams& params) {
    CoefficientState state(params.params().n_trunc, params.params().t_start);
    state(0, 0, 0, 0) = 1.0;
    return state;
}

namespace {

// Per block: d1 = a10 - a01, d2 = a11 - a00 enter [sigma_x, .]; s1 = a10 + a01,
// s2 = a00 + a11 enter {sigma_x, .}.
struct Split {
    cplx d1, d2, s1, s2;
};

}  // namespace

void rhs(double t, const Eigen::VectorXcd& state, const SolverModel& model, Eigen::VectorXcd& out, RhsForm form) {
    const SystemParams& prm = model.params;
    const int n = prm.n_trunc;
    if (state.size() != 4 * Eigen::Index(n) * n || out.size() != state.size())
        throw std::invalid_argument("rhs: state size does not match n_trunc");

    const cplx lam = model.spec.lambda;
    const cplx lam_c = std::conj(lam);
    const cplx sa = model.spec.sigma_a;
    const cplx sa_c = std::conj(sa);
    const double kappa = model.spec.kappa;
    const double g = prm.g;
    const double bias = prm.v * t;
    const double force = prm.gamma > 0.0 ? dsigma(bias, prm.temperature, g) : 0.0;
    const cplx ig(0.0, g);
    const bool printed = form == RhsForm::AsPrinted;

    // Prefactors of the commutator [sigma_x, .] and anticommutator {sigma_x, .} pieces.
    const cplx up_coef = printed ? -ig : ig;                                      // neighbours n+1
    const cplx ladder_coef = printed ? ig * kappa : -ig;                          // sigma_a ladder
    const cplx force_coef = printed ? cplx(0.0, -prm.gamma * force * kappa)       // force term
                                    : cplx(-prm.gamma * kappa * force, 0.0);
    const cplx anti_coef = printed ? ig * kappa : ig * (kappa / 2.0);
    const cplx rot(0.0, printed ? bias : -bias);
    // The sigma_a* ladder enters with the opposite sign in the printed form.
    const cplx sa_c_signed = printed ? -sa_c : sa_c;

    // Zero-padded border so that neighbours n-1 and n+1 never need a bounds check.
    thread_local std::vector<Split> split;
    const int w = n + 2;
    split.assign(std::size_t(w) * w, Split{});
    const cplx* c = state.data();
    for (int m = 0; m < n; ++m)
        for (int mp = 0; mp < n; ++mp) {
            const cplx* a = c + CoefficientState::offset(n, m, mp);
            split[std::size_t(m + 1) * w + mp + 1] = {a[2] - a[1], a[3] - a[0], a[2] + a[1], a[0] + a[3]};
        }

    // The consistent form maps Hermitian states to Hermitian derivatives, so only blocks
    // with m <= m' are computed and the rest mirrored. This keeps the symmetry exact.
    cplx* o = out.data();
    for (int m = 0; m < n; ++m) {
        const double fm = m;
        for (int mp = printed ? 0 : m; mp < n; ++mp) {
            const double fmp = mp;
            const std::size_t centre = std::size_t(m + 1) * w + mp + 1;
            const Split& up_a = split[centre + w];   // c_{m+1,m'}
            const Split& up_b = split[centre + 1];   // c_{m,m'+1}
            const Split& dn_a = split[centre - w];   // c_{m-1,m'}
            const Split& dn_b = split[centre - 1];   // c_{m,m'-1}

            // Coefficients of c_{m-1,m'} and c_{m,m'-1} inside the commutator:
            // ladder (sa m, sa* m') plus force times L = m' c_{m,m'-1} - m c_{m-1,m'}.
            const cplx coef_a = ladder_coef * sa * fm - force_coef * fm;
            const cplx coef_b = ladder_coef * sa_c_signed * fmp + force_coef * fmp;
            const cplx anti_a = -anti_coef * fm;
            const cplx anti_b = anti_coef * fmp;

            const cplx y1 = up_coef * (up_a.d1 + up_b.d1) + coef_a * dn_a.d1 + coef_b * dn_b.d1;
            const cplx y2 = up_coef * (up_a.d2 + up_b.d2) + coef_a * dn_a.d2 + coef_b * dn_b.d2;
            const cplx z1 = anti_a * dn_a.s1 + anti_b * dn_b.s1;
            const cplx z2 = anti_a * dn_a.s2 + anti_b * dn_b.s2;

            const cplx diag = fm * lam + fmp * lam_c;
            const Eigen::Index off = CoefficientState::offset(n, m, mp);
            const cplx* a = c + off;
            cplx* r = o + off;
            // -i (bias/2) [sigma_z, c] has entries (0, -i bias c01, i bias c10, 0)
            r[0] = diag * a[0] + y1 + z1;
            r[1] = (diag + rot) * a[1] + y2 + z2;
            r[2] = (diag - rot) * a[2] - y2 + z2;
            r[3] = diag * a[3] - y1 + z1;
            if (printed) continue;
            if (mp == m) {
                r[0] = r[0].real();
                r[3] = r[3].real();
                const cplx h = 0.5 * (r[1] + std::conj(r[2]));
                r[1] = h;
                r[2] = std::conj(h);
            } else {
                cplx* q = o + CoefficientState::offset(n, mp, m);
                q[0] = std::conj(r[0]);
                q[1] = std::conj(r[2]);
                q[2] = std::conj(r[1]);
                q[3] = std::conj(r[3]);
            }
        }
    }
}

CoefficientState rhs(const CoefficientState& state, const SolverModel& model, RhsForm form) {
    CoefficientState out(state.size(), state.time());
    rhs(state.time(), state.data(), model, out.data(), form);
    return out;
}

double p_up_rate(double /*t*/, const CoefficientState& state, const SolverModel& model) {
    if (state.size() < 2) return 0.0;
    // Only the neighbour coupling feeds the up-up entry of c_00.
    const cplx s01 = state(1, 0, 0, 1) + state(0, 1, 0, 1);
    const cplx s10 = state(1, 0, 1, 0) + state(0, 1, 1, 0);
    return (cplx(0.0, model.params.g) * (s10 - s01)).real();
}

Eigen::Matrix2cd qubit_reduced(const CoefficientState& state) {
    const Eigen::Matrix2cd c = state.block(0, 0);
    return 0.5 * (c + c.adjoint());
}

double trace_residual(const CoefficientState& state) {
    return std::abs(state(0, 0, 0, 0) + state(0, 0, 1, 1) - 1.0);
}

double hermiticity_residual(const CoefficientState& state) {
    const int n = state.size();
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    worst = std::max(worst, std::abs(state(a, b, i, j) - std::conj(state(b, a, j, i))));
    return worst;
}

double spill(const CoefficientState& state) {
    const int n = state.size();
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                worst = std::max({worst, std::abs(state(n - 1, k, i, j)), std::abs(state(k, n - 1, i, j))});
    return worst;
}

std::vector<double> sample_grid(double t_start, double t_end, int count) {
    if (count < 2) throw std::invalid_argument("sample grid needs at least two points");
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) grid[i] = t_start + (t_end - t_start) * double(i) / double(count - 1);
    grid.back() = t_end;
    return grid;
}

SweepResult integrate(const ValidatedParams& params, const IntegrateOptions& options) {
    const SolverModel model = make_model(params);
    const SystemParams& prm = model.params;
    const int n = prm.n_trunc;
    if (options.samples < 2) throw std::invalid_argument("integrate needs at least two samples");

    std::unique_ptr<FockWeightTable> table;
    const int levels = std::min(options.fock_levels, n);
    if (levels > 0) {
        const EigenBasis basis(model.spec, model.diffusion, n);
        table = std::make_unique<FockWeightTable>(basis, levels - 1);
    }

    SweepResult res;
    res.fock_levels = levels;
    res.times = sample_grid(prm.t_start, prm.t_end, options.samples);
    res.p_fock.assign(2 * levels, {});
    const double abort_at = options.abort_factor * options.invariant_tol;

    CoefficientState view(n);
    auto observe = [&](double t, const Eigen::VectorXcd& y) {
        view.data() = y;
        view.set_time(t);
        const Eigen::Matrix2cd q = qubit_reduced(view);
        const double tr = trace_residual(view);
        const double herm = hermiticity_residual(view);
        res.p_up.push_back(q(0, 0).real());
        res.p_down.push_back(q(1, 1).real());
        res.p_up_rate.push_back(p_up_rate(t, view, model));
        for (int k = 0; k < levels; ++k) {
            res.p_fock[k].push_back(fock_population(view, *table, Spin::Up, k));
            res.p_fock[levels + k].push_back(fock_population(view, *table, Spin::Down, k));
        }
        res.trace_residuals.push_back(tr);
        res.herm_residuals.push_back(herm);
        res.trace_residual = std::max(res.trace_residual, tr);
        res.hermiticity_residual = std::max(res.hermiticity_residual, herm);
        res.max_spill = std::max(res.max_spill, spill(view));
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(q, Eigen::EigenvaluesOnly);
        res.min_qubit_eigenvalue = std::min(res.min_qubit_eigenvalue, eig.eigenvalues()[0]);
        if (options.keep_states) res.states.push_back(view);
        if (tr > abort_at || herm > abort_at) {
            std::ostringstream os;
            os << "invariant breach at t = " << t << ": trace residual " << tr << ", hermiticity residual " << herm;
            throw SolverError(os.str());
        }
    };
    auto f = [&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) { rhs(t, y, model, dy); };

    const CoefficientState start = initial_state(params);
    try {
        res.stats = integrate_dp45(f, prm.t_start, start.data(), res.times, observe, options.ode);
    } catch (const StepUnderflow& e) {
        throw SolverError(e.what());
    }
    res.p_flip_final = 1.0 - res.p_up.back();
    return res;
}

}  // namespace lzqed
