// ode.hpp: adaptive Dormand-Prince 5(4) with continuous output
//
// Works on Eigen column vectors (real or complex). The observer is called at
// every requested sample time with the interpolated state; it may throw to abort.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lzqed {

struct OdeOptions {
    double rtol{1e-8};
    double atol{1e-10};
    double initial_step{0.0};  // 0 picks a step from the first derivative
    double min_step{1e-12};    // relative to the interval length
    long max_steps{50'000'000};
};

struct OdeStats {
    long accepted{0};
    long rejected{0};
    long rhs_calls{0};
};

class StepUnderflow : public std::runtime_error {
public:
    StepUnderflow(double t, double h)
        : std::runtime_error(describe(t, h)), time_(t) {}
    double time() const noexcept { return time_; }

private:
    static std::string describe(double t, double h) {
        std::ostringstream os;
        os << "step size underflow (h = " << h << ") at t = " << t;
        return os.str();
    }
    double time_;
};

namespace dp45 {
// Butcher tableau
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
// difference between the 5th and embedded 4th order weights
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
// continuous extension (Hairer & Wanner, DOPRI5)
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp45

/// Integrates y' = f(t, y) from t0 to the last entry of `samples` (ascending, all >= t0).
/// f has signature void(double t, const Vec& y, Vec& dydt).
template <class Vec, class Rhs, class Observer>
OdeStats integrate_dp45(Rhs&& f, double t0, Vec y, const std::vector<double>& samples, Observer&& observe,
                        const OdeOptions& opt = {}) {
    using namespace dp45;
    OdeStats stats;
    if (samples.empty()) return stats;
    const double t_final = samples.back();
    const double span = t_final - t0;
    if (span < 0.0) throw std::invalid_argument("integrate_dp45: samples must not precede t0");

    const Eigen::Index dim = y.size();
    Vec k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), ytmp(dim), ynew(dim);
    Vec r2(dim), r3(dim), r4(dim), r5(dim);

    auto call = [&](double t, const Vec& state, Vec& out) {
        f(t, state, out);
        ++stats.rhs_calls;
    };
    auto error_norm = [&](const Vec& err, const Vec& a, const Vec& b) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            // squared moduli avoid hypot in the hot loop
            const double sc = opt.atol + opt.rtol * std::sqrt(std::max(std::norm(a[i]), std::norm(b[i])));
            acc += std::norm(err[i]) / (sc * sc);
        }
        return std::sqrt(acc / double(std::max<Eigen::Index>(dim, 1)));
    };

    std::size_t next = 0;
    while (next < samples.size() && samples[next] <= t0) observe(samples[next++], y);
    if (next == samples.size() || span == 0.0) return stats;

    double t = t0;
    call(t, y, k1);

    double h = opt.initial_step;
    if (h <= 0.0) {
        // Hairer's starting-step heuristic with a single explicit Euler probe.
        const double d0 = error_norm(y, y, y);
        const double d1n = error_norm(k1, y, y);
        double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h0 = std::min(h0, span);
        ytmp = y + h0 * k1;
        call(t + h0, ytmp, k2);
        const double d2 = error_norm(Vec(k2 - k1), y, y) / h0;
        const double dmax = std::max(d1n, d2);
        const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
        h = std::min({100.0 * h0, h1, span});
    }

    const double h_min = opt.min_step * std::max(1.0, std::abs(span));
    const double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
    double facold = 1e-4;
    bool last_rejected = false;

    while (t < t_final) {
        if (stats.accepted + stats.rejected >= opt.max_steps)
            throw std::runtime_error("integrate_dp45: step budget exhausted");
        if (h < h_min) throw StepUnderflow(t, h);
        const bool final_step = t + 1.01 * h >= t_final;
        if (final_step) h = t_final - t;

        ytmp = y + h * (a21 * k1);
        call(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        call(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        call(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        call(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        call(t + h, ytmp, k6);
        ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        call(t + h, ynew, k7);

        ytmp = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err = error_norm(ytmp, y, ynew);

        const double fac11 = std::pow(std::max(err, 1e-300), expo1);
        if (err <= 1.0) {
            double fac = fac11 / std::pow(facold, beta);
            fac = std::clamp(fac / safe, 0.2, 10.0);
            double h_next = h / fac;
            if (last_rejected) h_next = std::min(h_next, h);
            facold = std::max(err, 1e-4);

            const double t_new = final_step ? t_final : t + h;
            if (next < samples.size() && samples[next] <= t_new) {
                r2 = ynew - y;
                r3 = h * k1 - r2;
                r4 = r2 - h * k7 - r3;
                r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                while (next < samples.size() && samples[next] <= t_new) {
                    const double theta = (samples[next] - t) / h;
                    const double theta1 = 1.0 - theta;
                    ytmp = y + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
                    observe(samples[next++], ytmp);
                }
            }
            y.swap(ynew);
            k1.swap(k7);  // first-same-as-last
            t = t_new;
            h = h_next;
            ++stats.accepted;
            last_rejected = false;
        } else {
            h = h / std::min(10.0, fac11 / safe);
            ++stats.rejected;
            last_rejected = true;
        }
    }
    return stats;
}

}  // namespace lzqed
