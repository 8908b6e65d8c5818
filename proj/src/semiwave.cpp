#include "stefan_front/semiwave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stefan_front {

namespace {

using S = std::array<double, 2>;

struct SaddleTrace {
    std::vector<PhasePoint> samples;
    std::vector<double> tau;  // backward time along the trajectory
    double q_c = 0.0;
    double p_at_0 = 0.0;
    double tau_end = 0.0;
};

double saddle_slope(const Nonlinearity& nl, double c) {
    if (nl.fp1() >= 0.0) throw DegenerateError("saddle trajectory needs f'(1) < 0");
    return 0.5 * (c - std::sqrt(c * c - 4.0 * nl.fp1()));
}

// Follow the branch entering (1,0) with negative slope backwards in z until
// p = 0 (q_c > 0), q = 0, or q drops below `q_stop` (then p_at_0 is left for
// the caller).
SaddleTrace trace_saddle(const Nonlinearity& nl, double c, double eps, const numerics::OdeOptions& ode, bool record,
                         double q_stop = 0.0) {
    const double slope = saddle_slope(nl, c);
    const S start{1.0 - eps, -slope * eps};
    const numerics::OdeRhs<2> rhs = [&](double, const S& y) { return S{-y[1], -(c * y[1] - nl(y[0]))}; };
    const std::array<numerics::OdeEvent<2>, 2> events = {
        [](double, const S& y) { return y[1]; },
        [q_stop](double, const S& y) { return y[0] - q_stop; },
    };

    SaddleTrace tr;
    if (record) {
        tr.samples.push_back({start[0], start[1]});
        tr.tau.push_back(0.0);
    }
    // Near the origin (monostable, c >= c0) the trajectory creeps in forever;
    // stop once both coordinates are negligible.
    const numerics::OdeObserver<2> obs = [&](double t, const S& y) {
        if (record) {
            tr.samples.push_back({y[0], y[1]});
            tr.tau.push_back(t);
        }
        if (y[0] < 1e-13 && y[1] < 1e-13) return false;
        // Where f vanishes p decays exponentially while q tends to q - p/c.
        return !(y[1] < 1e-12 && nl(y[0]) == 0.0 && y[0] > 1e-13);
    };
    const auto res = numerics::integrate<2>(rhs, 0.0, start, 1e5, events, obs, ode);
    tr.tau_end = res.t;
    if (res.stop == numerics::OdeStop::Event && res.event_index == 0) {
        tr.q_c = res.y[0];
        tr.p_at_0 = 0.0;
        if (record) tr.samples.back().p = 0.0;
    } else if (res.stop == numerics::OdeStop::Event && res.event_index == 1) {
        tr.q_c = 0.0;
        tr.p_at_0 = q_stop > 0.0 ? res.y[1] : std::max(0.0, res.y[1]);
        if (record && q_stop == 0.0) tr.samples.back().q = 0.0;
    } else if (res.stop == numerics::OdeStop::Observer && res.y[0] > 1e-13 && c > 0.0) {
        tr.q_c = std::max(0.0, res.y[0] - res.y[1] / c);
        tr.p_at_0 = 0.0;
        if (record) tr.samples.back() = {tr.q_c, 0.0};
    } else {
        tr.q_c = 0.0;
        tr.p_at_0 = std::max(0.0, res.y[1] - c * res.y[0]);
    }
    return tr;
}

// Monostable f: P_c stays positive on (0,1), and P_c(0) > 0 exactly when
// w = P/q eventually exceeds c near the origin (beyond that w grows without
// bound as q -> 0). Integrated in s = ln q so that the slow passage near a
// degenerate node does not underflow.
bool monostable_positive_at_zero(const Nonlinearity& nl, double c, const SemiWaveOptions& opt) {
    if (c * c < 4.0 * nl.fp0()) return true;  // origin is a focus: P_c(0) > 0
    constexpr double q_switch = 1e-3;
    const auto tr = trace_saddle(nl, c, opt.eps_start, opt.ode, false, q_switch);
    if (tr.q_c > 0.0) return false;
    const double w0 = tr.p_at_0 / q_switch;
    if (w0 > c) return true;

    using S1 = std::array<double, 1>;
    const numerics::OdeRhs<1> rhs = [&](double s, const S1& w) {
        const double q = std::exp(s);
        return S1{c - w[0] - nl(q) / (q * w[0])};
    };
    const std::array<numerics::OdeEvent<1>, 1> events = {[c](double, const S1& w) { return c - w[0]; }};
    const auto res = numerics::integrate<1>(rhs, std::log(q_switch), S1{w0}, std::log(1e-200), events, {},
                                            numerics::OdeOptions{1e-11, 1e-14, 1e-3, 1.0, 1'000'000});
    return res.stop == numerics::OdeStop::Event;
}

double hermite(double q0, double p0, double d0, double q1, double p1, double d1, double q) {
    const double h = q1 - q0;
    const double t = (q - q0) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * h * d1;
}

}  // namespace

double SaddleTrajectory::operator()(double q, const Nonlinearity& nl) const {
    if (samples.empty()) return 0.0;
    if (q >= samples.front().q) {
        return std::max(0.0, samples.front().p + initial_slope * (q - samples.front().q));
    }
    if (q <= samples.back().q) return q < q_c ? 0.0 : samples.back().p;
    // samples are ordered by decreasing q
    const auto it = std::lower_bound(samples.begin(), samples.end(), q,
                                     [](const PhasePoint& a, double v) { return a.q > v; });
    const auto& b = *it;        // q_b <= q
    const auto& a = *(it - 1);  // q_a > q
    const double floor = 1e-8;
    if (a.p < floor || b.p < floor) {
        const double w = (q - b.q) / (a.q - b.q);
        return b.p + w * (a.p - b.p);
    }
    const double da = c - nl(a.q) / a.p;
    const double db = c - nl(b.q) / b.p;
    return hermite(b.q, b.p, db, a.q, a.p, da, q);
}

SaddleTrajectory saddle_trajectory(const Nonlinearity& nl, double c, double eps_start, bool richardson,
                                   const SemiWaveOptions& options) {
    if (c < 0.0) throw DomainError("saddle_trajectory: c must be nonnegative");
    if (!(eps_start > 0.0 && eps_start <= 1e-3)) throw DomainError("saddle_trajectory: eps_start must lie in (0, 1e-3]");
    auto tr = trace_saddle(nl, c, eps_start, options.ode, true);

    SaddleTrajectory st;
    st.c = c;
    st.eps_start = eps_start;
    st.initial_slope = saddle_slope(nl, c);
    st.samples = std::move(tr.samples);
    st.q_c = tr.q_c;
    st.p_at_0 = tr.p_at_0;
    st.richardson_defect = std::numeric_limits<double>::quiet_NaN();
    if (richardson) {
        const auto half = saddle_trajectory(nl, c, 0.5 * eps_start, false, options);
        double worst = 0.0;
        for (int k = 0; k <= 80; ++k) {
            const double q = 0.1 + 0.8 * k / 80.0;
            if (q <= std::max(st.q_c, half.q_c)) continue;
            worst = std::max(worst, std::abs(st(q, nl) - half(q, nl)));
        }
        st.richardson_defect = worst;
    }
    return st;
}

double saddle_value_at_zero(const Nonlinearity& nl, double c, const SemiWaveOptions& options) {
    return trace_saddle(nl, c, options.eps_start, options.ode, false).p_at_0;
}

double c0(const Nonlinearity& nl, const SemiWaveOptions& options) {
    if (nl.kind() == Kind::Custom) throw KindError("c0 requires a monostable, bistable or combustion f");
    const double upper = 2.0 * std::sqrt(nl.sup_slope());
    std::function<bool(double)> positive;
    if (nl.kind() == Kind::Monostable) {
        positive = [&](double c) { return monostable_positive_at_zero(nl, c, options); };
    } else {
        positive = [&](double c) { return saddle_value_at_zero(nl, c, options) > options.p_zero_tol; };
    }
    if (positive(upper)) return upper;
    const auto br = numerics::bisect_predicate(positive, 0.0, upper, options.bracket_width);
    return br.lo;
}

SemiWaveResult c_star(const Nonlinearity& nl, double mu, const SemiWaveOptions& options) {
    return c_star(nl, mu, c0(nl, options), options);
}

SemiWaveResult c_star(const Nonlinearity& nl, double mu, double known_c0, const SemiWaveOptions& options) {
    if (!(mu > 0.0)) throw DomainError("c_star: mu must be positive");
    SemiWaveResult out;
    out.mu = mu;
    out.c0 = known_c0;

    const auto xi = [&](double c) {
        const double v = saddle_value_at_zero(nl, c, options) - c / mu;
        out.xi_trace.emplace_back(c, v);
        return v;
    };
    double lo = 0.0, hi = known_c0;
    if (xi(hi) >= 0.0) throw DomainError("c_star: xi(c0) is not negative; c0 is inaccurate");
    while (hi - lo > options.bracket_width) {
        const double mid = 0.5 * (lo + hi);
        if (xi(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    out.c_star = 0.5 * (lo + hi);
    out.omega_star = out.c_star / mu;
    std::sort(out.xi_trace.begin(), out.xi_trace.end());

    // Profile: the saddle branch at c*, reparametrised so that z = 0 at q = 0.
    const double eps = std::min(options.eps_start, options.profile_tail_tol);
    const auto tr = trace_saddle(nl, out.c_star, eps, options.ode, true);
    const double z_max = tr.tau_end;
    std::vector<double> zs, qs, ps;
    for (std::size_t k = tr.samples.size(); k-- > 0;) {
        zs.push_back(z_max - tr.tau[k]);
        qs.push_back(tr.samples[k].q);
        ps.push_back(tr.samples[k].p);
    }
    const std::size_t n = static_cast<std::size_t>(std::ceil(z_max / options.profile_dz));
    std::size_t j = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double z = std::min(z_max, z_max * static_cast<double>(k) / static_cast<double>(n));
        while (j + 2 < zs.size() && zs[j + 1] < z) ++j;
        const double q = hermite(zs[j], qs[j], ps[j], zs[j + 1], qs[j + 1], ps[j + 1], z);
        out.profile.push_back({z, q});
    }
    out.profile.front().value = 0.0;
    return out;
}

FiniteWave perturbed_finite_wave(const Nonlinearity& nl, double mu, double c, const SemiWaveOptions& options) {
    const auto sw = c_star(nl, mu, options);
    if (!(c > 0.0 && c < sw.c_star)) throw DomainError("perturbed_finite_wave: need 0 < c < c*");
    return finite_wave(nl, c, sw.omega_star);
}

StationaryProfile ground_state(const Nonlinearity& nl, double tail_tol) {
    if (nl.kind() != Kind::Bistable) throw KindError("ground_state requires a bistable nonlinearity");
    const double peak = *nl.theta_bar();
    const auto half = profile_from_peak(nl, peak, tail_tol, 1601);
    StationaryProfile gs;
    gs.q_top = peak;
    gs.Z = half.back().x;
    gs.boundary_slope = std::sqrt(std::max(0.0, -2.0 * primitive_local(nl, 0.0, tail_tol)));
    for (auto it = half.rbegin(); it != half.rend(); ++it) gs.profile.push_back({-it->x, it->value});
    for (std::size_t k = 1; k < half.size(); ++k) gs.profile.push_back(half[k]);
    return gs;
}

}  // namespace stefan_front
