#pragma once

// Small numerical kernels shared by the phase-plane, semi-wave and PDE code:
// quadrature, bracketing root finders, golden-section search, a tridiagonal
// solver, an embedded Runge-Kutta integrator with event location, and a
// least-squares line fit.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "stefan_front/errors.hpp"

namespace stefan_front::numerics {

using ScalarFn = std::function<double(double)>;

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
/// Throws QuadError when `max_depth` bisections are not enough.
double adaptive_simpson(const ScalarFn& f, double a, double b, double tol, int max_depth = 60);

/// Composite 10-point Gauss-Legendre rule on `panels` equal panels.
double gauss_legendre(const ScalarFn& f, double a, double b, int panels = 1);

/// Gauss-Legendre on [a,b] with extra panel boundaries at `breaks` (those
/// falling strictly inside the interval). Exact for polynomial pieces up to
/// degree 19.
double gauss_legendre_split(const ScalarFn& f, double a, double b, std::span<const double> breaks,
                            int panels = 1);

/// Gauss-Legendre on panels that shrink geometrically (ratio 2, down to
/// `min_frac` of the length) towards the ends flagged in `grade_left` and
/// `grade_right`. Suited to integrands with a near-singular layer of unknown
/// width at an end. `breaks` must be sorted.
double gauss_legendre_graded(const ScalarFn& f, double a, double b, bool grade_left, bool grade_right,
                             std::span<const double> breaks = {}, double min_frac = 1e-12);

/// Bisection on a bracket where `f(lo)` and `f(hi)` have opposite signs.
double bisect_root(const ScalarFn& f, double lo, double hi, double tol, int max_iter = 200);

/// Bisection on a monotone predicate: `pred(lo)` true, `pred(hi)` false.
/// Returns the final {lo, hi} bracket.
struct Bracket {
    double lo;
    double hi;
};
Bracket bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi, double width,
                         int max_iter = 200);

/// Golden-section minimisation of a unimodal function on [a,b].
struct Minimum {
    double x;
    double value;
};
Minimum golden_section_min(const ScalarFn& f, double a, double b, double tol = 1e-10, int max_iter = 200);

/// Solve a tridiagonal system in place (Thomas algorithm). `sub[0]` and
/// `sup[n-1]` are ignored. The right-hand side is overwritten by the solution.
void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag, std::span<const double> sup,
                       std::span<double> rhs, std::span<double> scratch);

/// Ordinary least squares y = slope*x + intercept.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Piecewise-linear interpolation on strictly increasing abscissae; clamps
/// outside the table.
double interp_linear(std::span<const double> xs, std::span<const double> ys, double x);

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with event location
// ---------------------------------------------------------------------------

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h_init = 1e-4;
    double h_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 2'000'000;
};

enum class OdeStop { ReachedEnd, Event, Observer, StepLimit };

template <std::size_t N>
struct OdeResult {
    double t = 0.0;
    std::array<double, N> y{};
    OdeStop stop = OdeStop::ReachedEnd;
    int event_index = -1;
    std::size_t steps = 0;
};

template <std::size_t N>
using OdeRhs = std::function<std::array<double, N>(double, const std::array<double, N>&)>;

template <std::size_t N>
using OdeEvent = std::function<double(double, const std::array<double, N>&)>;

/// Called after every accepted step with (t, y); return false to stop.
template <std::size_t N>
using OdeObserver = std::function<bool(double, const std::array<double, N>&)>;

namespace detail {

template <std::size_t N>
struct DpStep {
    std::array<double, N> y5;
    std::array<double, N> err;
};

template <std::size_t N>
DpStep<N> dopri_step(const OdeRhs<N>& rhs, double t, const std::array<double, N>& y, double h) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    auto axpy = [&](std::initializer_list<std::pair<double, const std::array<double, N>*>> terms) {
        std::array<double, N> out = y;
        for (const auto& [coef, k] : terms) {
            for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
        }
        return out;
    };

    const auto k1 = rhs(t, y);
    const auto k2 = rhs(t + c2 * h, axpy({{a21, &k1}}));
    const auto k3 = rhs(t + c3 * h, axpy({{a31, &k1}, {a32, &k2}}));
    const auto k4 = rhs(t + c4 * h, axpy({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const auto k5 = rhs(t + c5 * h, axpy({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const auto k6 = rhs(t + h, axpy({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const auto y5 = axpy({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const auto k7 = rhs(t + h, y5);

    DpStep<N> out{y5, {}};
    for (std::size_t i = 0; i < N; ++i) {
        out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }
    return out;
}

}  // namespace detail

/// Integrate y' = rhs(t, y) from t0 towards t_end (either direction).
/// Terminal events fire when an event function changes sign across a step;
/// the crossing is refined by bisection on the step length.
template <std::size_t N>
OdeResult<N> integrate(const OdeRhs<N>& rhs, double t0, std::array<double, N> y0, double t_end,
                       std::span<const OdeEvent<N>> events = {}, const OdeObserver<N>& observer = {},
                       const OdeOptions& opt = {}) {
    const double dir = t_end >= t0 ? 1.0 : -1.0;
    OdeResult<N> res;
    res.t = t0;
    res.y = y0;

    std::vector<double> ev_prev(events.size());
    for (std::size_t k = 0; k < events.size(); ++k) ev_prev[k] = events[k](t0, y0);

    double h = std::min(opt.h_init, std::abs(t_end - t0));
    if (h <= 0.0) return res;

    while (res.steps < opt.max_steps) {
        const double remaining = std::abs(t_end - res.t);
        if (remaining <= 1e-15 * std::max(1.0, std::abs(res.t))) {
            res.stop = OdeStop::ReachedEnd;
            return res;
        }
        h = std::min({h, remaining, opt.h_max});

        const auto trial = detail::dopri_step<N>(rhs, res.t, res.y, dir * h);
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = opt.atol + opt.rtol * std::max(std::abs(res.y[i]), std::abs(trial.y5[i]));
            err = std::max(err, std::abs(trial.err[i]) / sc);
        }
        if (!std::isfinite(err)) {
            h *= 0.25;
            if (h < 1e-300) break;
            continue;
        }
        if (err > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            continue;
        }

        // Accepted step: look for events.
        int fired = -1;
        for (std::size_t k = 0; k < events.size(); ++k) {
            const double ev = events[k](res.t + dir * h, trial.y5);
            if ((ev_prev[k] > 0.0 && ev <= 0.0) || (ev_prev[k] < 0.0 && ev >= 0.0)) {
                fired = static_cast<int>(k);
                break;
            }
        }
        if (fired >= 0) {
            const auto& ev_fn = events[static_cast<std::size_t>(fired)];
            const double s0 = ev_prev[static_cast<std::size_t>(fired)];
            double lo = 0.0, hi = h;
            std::array<double, N> y_hi = trial.y5;
            for (int it = 0; it < 200 && (hi - lo) > 1e-15 * std::max(1.0, std::abs(res.t)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const auto probe = detail::dopri_step<N>(rhs, res.t, res.y, dir * mid);
                const double v = ev_fn(res.t + dir * mid, probe.y5);
                if ((s0 > 0.0 && v <= 0.0) || (s0 < 0.0 && v >= 0.0)) {
                    hi = mid;
                    y_hi = probe.y5;
                } else {
                    lo = mid;
                }
            }
            res.t += dir * hi;
            res.y = y_hi;
            ++res.steps;
            res.stop = OdeStop::Event;
            res.event_index = fired;
            if (observer) observer(res.t, res.y);
            return res;
        }

        res.t += dir * h;
        res.y = trial.y5;
        ++res.steps;
        for (std::size_t k = 0; k < events.size(); ++k) {
            const double ev = events[k](res.t, res.y);
            if (ev != 0.0) ev_prev[k] = ev;
        }
        if (observer && !observer(res.t, res.y)) {
            res.stop = OdeStop::Observer;
            return res;
        }
        const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(grow, 0.2, 5.0);
    }
    res.stop = OdeStop::StepLimit;
    return res;
}

}  // namespace stefan_front::numerics
