#include "stefan_front/phase_plane.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <numbers>

namespace stefan_front {

namespace {

// int_{q-len}^q f, integrated in the offset t = q - r so that short
// intervals keep their relative accuracy.
double primitive_below(const Nonlinearity& nl, double q, double len) {
    std::array<double, 4> breaks{};
    std::size_t nb = 0;
    for (double b : nl.breakpoints()) {
        if (nb < breaks.size()) breaks[nb++] = q - b;
    }
    return numerics::gauss_legendre_split([&](double t) { return nl(q - t); }, 0.0, len,
                                          std::span<const double>(breaks.data(), nb));
}

// Integrand of the time map after r = q - s^2:  2s / sqrt(2 int_{q-s^2}^q f).
double time_map_integrand(const Nonlinearity& nl, double q, double s) {
    if (s == 0.0) return 2.0 / std::sqrt(2.0 * nl(q));
    const double g = primitive_below(nl, q, s * s);
    if (!(g > 0.0)) {
        throw DomainError("time map: int_r^q f lost positivity at q=" + std::to_string(q) +
                          ", r=" + std::to_string(q - s * s));
    }
    return 2.0 * s / std::sqrt(2.0 * g);
}

void check_named(const Nonlinearity& nl, const char* op) {
    if (nl.kind() == Kind::Custom) throw KindError(std::string(op) + " requires a monostable, bistable or combustion f");
}

}  // namespace

double StationaryProfile::value_at(double x) const {
    if (profile.empty() || x <= profile.front().x || x >= profile.back().x) return 0.0;
    const auto it = std::upper_bound(profile.begin(), profile.end(), x,
                                     [](double v, const ProfilePoint& p) { return v < p.x; });
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double w = (x - a.x) / (b.x - a.x);
    return a.value + w * (b.value - a.value);
}

double phase_residual(const PhaseTrajectory& traj, const Nonlinearity& nl, double p_floor) {
    double worst = 0.0;
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const auto& a = traj.samples[i - 1];
        const auto& b = traj.samples[i];
        const double dq = b.q - a.q;
        if (dq == 0.0) continue;
        const double qm = 0.5 * (a.q + b.q);
        const double pm = 0.5 * (a.p + b.p);
        if (pm < p_floor) continue;
        const double slope = (b.p - a.p) / dq;
        const double rhs = traj.c - nl(qm) / pm;
        worst = std::max(worst, std::abs(slope - rhs) / (1.0 + std::abs(traj.c)));
    }
    return worst;
}

double p0(const Nonlinearity& nl, double omega, double q) {
    const double rad = omega * omega - 2.0 * primitive(nl, 0.0, q);
    if (rad < -1e-10) {
        throw DomainError("p0: radicand negative (q beyond the peak of the trajectory) at q=" + std::to_string(q));
    }
    return std::sqrt(std::max(0.0, rad));
}

double q_top(const Nonlinearity& nl, double omega) {
    check_named(nl, "q_top");
    const double w0 = *nl.omega0();
    if (!(omega > 0.0) || !(omega < w0)) {
        throw DomainError("q_top: omega must lie in (0, omega0=" + std::to_string(w0) + ")");
    }
    const double target = 0.5 * omega * omega;
    return numerics::bisect_root([&](double q) { return primitive(nl, 0.0, q) - target; }, nl.admissible_lower(), 1.0,
                                 1e-12);
}

double time_map(const Nonlinearity& nl, double q) {
    check_named(nl, "time_map");
    const double lo = nl.admissible_lower();
    if (!(q > lo && q < 1.0)) {
        throw DomainError("time_map: q=" + std::to_string(q) + " outside the admissible range (" + std::to_string(lo) +
                          ", 1)");
    }
    if (!(primitive(nl, 0.0, q) > 0.0)) throw DomainError("time_map: int_0^q f must be positive");
    std::array<double, 4> kinks{};
    std::size_t nk = 0;
    for (double b : nl.breakpoints()) {
        if (b < q && nk < kinks.size()) kinks[nk++] = std::sqrt(q - b);
    }
    std::sort(kinks.begin(), kinks.begin() + static_cast<std::ptrdiff_t>(nk));
    return numerics::gauss_legendre_graded([&](double s) { return time_map_integrand(nl, q, s); }, 0.0, std::sqrt(q),
                                           true, true, std::span<const double>(kinks.data(), nk));
}

CriticalLength critical_length(const Nonlinearity& nl) {
    check_named(nl, "critical_length");
    const double lo = nl.admissible_lower();
    constexpr int kScan = 33;
    std::vector<double> qs(kScan + 2);
    std::vector<double> zs(kScan + 2, std::numeric_limits<double>::infinity());
    for (int i = 0; i <= kScan + 1; ++i) qs[i] = lo + (1.0 - lo) * i / (kScan + 1.0);
    for (int i = 1; i <= kScan; ++i) zs[i] = time_map(nl, qs[i]);

    int best = 1;
    int dips = 0;
    for (int i = 1; i <= kScan; ++i) {
        if (zs[i] < zs[best]) best = i;
        if (zs[i] < zs[i - 1] && zs[i] < zs[i + 1]) ++dips;
    }

    const double span = 1.0 - lo;
    const double a = best == 1 ? lo + 1e-6 * span : qs[best - 1];
    const double b = best == kScan ? 1.0 - 1e-6 * span : qs[best + 1];
    const auto m = numerics::golden_section_min([&](double q) { return time_map(nl, q); }, a, b, 1e-9 * span);

    CriticalLength out;
    out.value = std::min(m.value, zs[best]);
    out.argmin_q = m.value <= zs[best] ? m.x : qs[best];
    out.multiple_minima = dips > 1;
    if (out.multiple_minima) {
        std::cerr << "warning: time map has " << dips << " local minima on the coarse scan; using the global one\n";
    }
    if (nl.kind() == Kind::Monostable) {
        const double zm = std::numbers::pi / (2.0 * std::sqrt(nl.fp0()));
        out.z_m = zm;
        // Z(q) -> Z_M as q -> 0+, so the infimum never exceeds the limit.
        if (zm < out.value) {
            out.value = zm;
            out.argmin_q = 0.0;
        }
    }
    return out;
}

std::vector<ProfilePoint> profile_from_peak(const Nonlinearity& nl, double peak, double floor, std::size_t samples) {
    // Values at which to sample: uniform in s = sqrt(peak - v), then, when the
    // floor is positive (exponential tails), geometric in v near the floor.
    const double s_max = std::sqrt(peak - floor);
    const double v_switch = floor > 0.0 ? std::max(floor, 0.05 * peak) : 0.0;
    const double s_switch = std::sqrt(peak - v_switch);
    std::vector<double> s_pts;
    const std::size_t n = std::max<std::size_t>(samples, 16);
    for (std::size_t k = 0; k < n; ++k) s_pts.push_back(s_switch * static_cast<double>(k) / static_cast<double>(n - 1));
    if (floor > 0.0 && v_switch > floor) {
        for (double v = v_switch * 0.97; v > floor; v *= 0.97) s_pts.push_back(std::sqrt(peak - v));
        s_pts.push_back(s_max);
    }

    const auto integrand = [&](double s) {
        if (s == 0.0) return 2.0 / std::sqrt(2.0 * nl(peak));
        const double g = primitive_below(nl, peak, s * s);
        return 2.0 * s / std::sqrt(2.0 * std::max(g, 1e-300));
    };

    std::vector<ProfilePoint> out;
    out.reserve(s_pts.size());
    double dist = 0.0;
    out.push_back({0.0, peak});
    for (std::size_t k = 1; k < s_pts.size(); ++k) {
        const bool first = k == 1;
        const bool last = k + 1 == s_pts.size();
        dist += (first || last) ? numerics::gauss_legendre_graded(integrand, s_pts[k - 1], s_pts[k], first, last)
                                : numerics::gauss_legendre(integrand, s_pts[k - 1], s_pts[k], 2);
        out.push_back({dist, peak - s_pts[k] * s_pts[k]});
    }
    out.back().value = floor;
    return out;
}

StationaryProfile stationary_profile(const Nonlinearity& nl, double Z) {
    check_named(nl, "stationary_profile");
    const auto cl = critical_length(nl);
    const bool strict = nl.kind() == Kind::Monostable;
    if (Z < cl.value || (strict && Z <= cl.value)) {
        throw NoSolution("stationary_profile: Z=" + std::to_string(Z) + " is below the critical length " +
                         std::to_string(cl.value));
    }
    const double lo = nl.admissible_lower();
    const double span = 1.0 - lo;

    std::vector<double> qs;
    for (int k = 2; k <= 12; ++k) qs.push_back(1.0 - span * std::pow(10.0, -k));
    for (int k = 2; k <= 8; ++k) qs.push_back(lo + span * std::pow(10.0, -k));
    for (int i = 1; i < 64; ++i) qs.push_back(lo + span * i / 64.0);
    if (cl.argmin_q > lo) qs.push_back(cl.argmin_q);
    std::sort(qs.begin(), qs.end(), std::greater<>());

    const auto excess = [&](double q) { return time_map(nl, q) - Z; };
    double q_hi = qs.front();
    if (excess(q_hi) <= 0.0) {
        throw NoSolution("stationary_profile: Z=" + std::to_string(Z) + " needs a peak closer to 1 than resolvable");
    }
    double q_lo = -1.0;
    for (std::size_t i = 1; i < qs.size(); ++i) {
        if (excess(qs[i]) <= 0.0) {
            q_lo = qs[i];
            break;
        }
        q_hi = qs[i];
    }
    if (q_lo < 0.0) throw NoSolution("stationary_profile: no peak with time map equal to Z=" + std::to_string(Z));
    const double top = numerics::bisect_root(excess, q_lo, q_hi, 1e-13);

    StationaryProfile sp;
    sp.Z = Z;
    sp.q_top = top;
    sp.boundary_slope = std::sqrt(2.0 * primitive(nl, 0.0, top));
    const auto half = profile_from_peak(nl, top, 0.0);
    // Distances are rescaled so that the support is exactly [-Z, Z]; the
    // correction is at the level of the quadrature error.
    const double scale = Z / half.back().x;
    sp.profile.reserve(2 * half.size() - 1);
    for (auto it = half.rbegin(); it != half.rend(); ++it) sp.profile.push_back({-it->x * scale, it->value});
    for (std::size_t k = 1; k < half.size(); ++k) sp.profile.push_back({half[k].x * scale, half[k].value});
    return sp;
}

FiniteWave finite_wave(const Nonlinearity& nl, double c, double omega, const FiniteWaveOptions& options) {
    check_named(nl, "finite_wave");
    if (c < 0.0) throw DomainError("finite_wave: c must be nonnegative");
    const double w0 = *nl.omega0();
    if (!(omega > 0.0 && omega < w0)) throw DomainError("finite_wave: omega must lie in (0, omega0)");

    using S = std::array<double, 2>;
    const numerics::OdeRhs<2> rhs = [&](double, const S& y) { return S{y[1], c * y[1] - nl(y[0])}; };
    const double ceiling = 1.0 - options.q_ceiling_eps;
    const std::array<numerics::OdeEvent<2>, 2> events = {
        [](double, const S& y) { return y[1]; },
        [ceiling](double, const S& y) { return ceiling - y[0]; },
    };

    FiniteWave fw;
    fw.c = c;
    fw.omega = omega;
    fw.trajectory.c = c;
    fw.trajectory.start = {0.0, omega};
    fw.profile.push_back({0.0, 0.0});
    fw.trajectory.samples.push_back({0.0, omega});
    const numerics::OdeObserver<2> obs = [&](double z, const S& y) {
        fw.profile.push_back({z, y[0]});
        fw.trajectory.samples.push_back({y[0], y[1]});
        return true;
    };
    const auto res = numerics::integrate<2>(rhs, 0.0, S{0.0, omega}, 1e6, events, obs, options.ode);

    if (res.stop != numerics::OdeStop::Event || res.event_index != 0) {
        throw NoTermination("finite_wave: p did not return to 0 before q reached 1 (c=" + std::to_string(c) +
                            ", omega=" + std::to_string(omega) + ")");
    }
    fw.q_end = res.y[0];
    fw.z_end = res.t;
    fw.trajectory.samples.back().p = 0.0;
    fw.trajectory.end = {res.y[0], 0.0};
    fw.trajectory.terminated_by = TrajectoryEnd::PHitZero;
    return fw;
}

}  // namespace stefan_front
