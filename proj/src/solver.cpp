#include "stefan_front/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "stefan_front/numerics.hpp"

namespace stefan_front {

std::string to_string(InitialFamily family) {
    switch (family) {
        case InitialFamily::CosineBump: return "cosine_bump";
        case InitialFamily::QuadBump: return "quad_bump";
        case InitialFamily::Samples: return "samples";
    }
    return "unknown";
}

std::string to_string(Termination term) {
    switch (term) {
        case Termination::TMax: return "t_max";
        case Termination::VanishTol: return "vanish_tol";
        case Termination::SpreadCertified: return "spread_certified";
        case Termination::VanishCertified: return "vanish_certified";
        case Termination::Blowup: return "blowup";
    }
    return "unknown";
}

double shape_value(const InitialData& data, double h0, double x) {
    if (!(x > -h0 && x < h0)) return 0.0;
    double base = 0.0;
    switch (data.family) {
        case InitialFamily::CosineBump: base = std::cos(std::numbers::pi * x / (2.0 * h0)); break;
        case InitialFamily::QuadBump: base = 1.0 - (x / h0) * (x / h0); break;
        case InitialFamily::Samples: {
            const auto& s = data.samples;
            if (s.size() < 2) return 0.0;
            const double pos = (x + h0) / (2.0 * h0) * static_cast<double>(s.size() - 1);
            const auto i = std::min(static_cast<std::size_t>(pos), s.size() - 2);
            const double w = pos - static_cast<double>(i);
            base = s[i] + w * (s[i + 1] - s[i]);
            break;
        }
    }
    return base * (1.0 + data.skew * x / h0);
}

namespace {

double node_y(std::size_t j, std::size_t n) { return -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n - 1); }

}  // namespace

void validate(const SolverConfig& c) {
    if (c.N < 5 || c.N % 2 == 0) throw DomainError("N must be odd and at least 5");
    if (!(c.mu > 0.0)) throw DomainError("mu must be positive");
    if (!(c.h0 > 0.0)) throw DomainError("h0 must be positive");
    if (!(c.t_max > 0.0)) throw DomainError("t_max must be positive");
    if (!(c.snapshot_every > 0.0)) throw DomainError("snapshot_every must be positive");
    if (!(c.dt_safety > 0.0 && c.dt_safety <= 1.0)) throw DomainError("dt_safety must lie in (0,1]");
    if (c.front_stride < 1) throw DomainError("front_stride must be at least 1");
    if (!(c.u0.sigma > 0.0)) throw DomainError("sigma must be positive");
    if (!(std::abs(c.u0.skew) < 1.0)) throw DomainError("|skew| must be below 1");

    if (c.u0.family == InitialFamily::Samples) {
        const auto& s = c.u0.samples;
        if (s.size() < 3) throw DomainError("samples: need at least 3 values");
        if (s.front() != 0.0 || s.back() != 0.0) throw ValidationError("u0(-h0) = u0(h0) = 0", s.front() != 0.0 ? -c.h0 : c.h0);
        // Second-order one-sided slopes; a flat start is rejected.
        const std::size_t m = s.size();
        if (!(4.0 * s[1] - s[2] > 0.0)) throw ValidationError("u0'(-h0) > 0", -c.h0);
        if (!(4.0 * s[m - 2] - s[m - 3] > 0.0)) throw ValidationError("u0'(h0) < 0", c.h0);
        for (std::size_t i = 1; i + 1 < m; ++i) {
            if (!(s[i] > 0.0)) throw ValidationError("u0 > 0 on (-h0, h0)", -c.h0 + 2.0 * c.h0 * i / (m - 1.0));
        }
    }
    const auto n = static_cast<std::size_t>(c.N);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double x = c.h0 * node_y(j, n);
        if (!(shape_value(c.u0, c.h0, x) > 0.0)) throw ValidationError("u0 > 0 on (-h0, h0)", x);
    }
}

std::uint64_t config_hash(const SolverConfig& c) {
    std::string text;
    char buf[128];
    const auto add = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%s=%.17g;", key, v);
        text += buf;
    };
    text += "f=" + c.nl.label() + ";" + to_string(c.nl.kind()) + ";";
    if (c.nl.theta()) add("theta", *c.nl.theta());
    for (double u : {0.1, 0.3, 0.5, 0.7, 0.9}) add("fs", c.nl(u));
    add("mu", c.mu);
    add("h0", c.h0);
    text += "family=" + to_string(c.u0.family) + ";";
    add("sigma", c.u0.sigma);
    add("skew", c.u0.skew);
    for (double s : c.u0.samples) add("s", s);
    add("N", c.N);
    add("dt_safety", c.dt_safety);
    add("t_max", c.t_max);
    add("snapshot_every", c.snapshot_every);
    add("overshoot_tol", c.tol.overshoot_tol);
    add("check_tol", c.tol.check_tol);
    add("sign_tol", c.tol.sign_tol);
    add("blowup_factor", c.tol.blowup_factor);
    add("vanish_tol", c.tol.vanish_tol);
    add("stop_on_vanish", c.stop_on_vanish ? 1 : 0);
    add("front_stride", c.front_stride);

    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 1099511628211ull;
    }
    return hash;
}

double Snapshot::y_at(std::size_t j) const { return node_y(j, U.size()); }

double Snapshot::x_at(std::size_t j) const { return 0.5 * ((g + h) + y_at(j) * (h - g)); }

double Snapshot::max_u() const { return U.empty() ? 0.0 : *std::max_element(U.begin(), U.end()); }

std::size_t Snapshot::argmax() const {
    return static_cast<std::size_t>(std::max_element(U.begin(), U.end()) - U.begin());
}

double Snapshot::mass() const {
    if (U.size() < 2) return 0.0;
    const double dx = (h - g) / static_cast<double>(U.size() - 1);
    double sum = 0.5 * (U.front() + U.back());
    for (std::size_t j = 1; j + 1 < U.size(); ++j) sum += U[j];
    return sum * dx;
}

double Snapshot::value_at(double x) const {
    if (!(x > g && x < h) || U.size() < 2) return 0.0;
    const double pos = (x - g) / (h - g) * static_cast<double>(U.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), U.size() - 2);
    const double w = pos - static_cast<double>(i);
    return U[i] + w * (U[i + 1] - U[i]);
}

TransformCoefficients front_fix(const SolverState& s) {
    const double L = s.h - s.g;
    TransformCoefficients tc;
    tc.diffusion = 4.0 / (L * L);
    tc.a_left = 2.0 * s.gp / L;
    tc.a_right = 2.0 * s.hp / L;
    return tc;
}

FrontSpeeds boundary_flux(const SolverState& s, double mu, bool check_signs, double sign_tol) {
    const auto& U = s.U;
    const std::size_t n = U.size();
    if (n < 5) throw DomainError("boundary_flux needs at least 5 nodes");
    const double dy = 2.0 / static_cast<double>(n - 1);
    const double scale = 2.0 / (s.h - s.g);
    const double ux_h = (3.0 * U[n - 1] - 4.0 * U[n - 2] + U[n - 3]) / (2.0 * dy) * scale;
    const double ux_g = (-3.0 * U[0] + 4.0 * U[1] - U[2]) / (2.0 * dy) * scale;
    FrontSpeeds fs{-mu * ux_g, -mu * ux_h};
    if (check_signs && (fs.hprime < -sign_tol || fs.gprime > sign_tol)) {
        throw SignError("front moving inward: g'=" + std::to_string(fs.gprime) + ", h'=" + std::to_string(fs.hprime));
    }
    return fs;
}

SolverState initial_state(const SolverConfig& c) {
    validate(c);
    const auto n = static_cast<std::size_t>(c.N);
    SolverState s;
    s.g = -c.h0;
    s.h = c.h0;
    s.U.resize(n);
    for (std::size_t j = 0; j < n; ++j) s.U[j] = c.u0.sigma * shape_value(c.u0, c.h0, c.h0 * node_y(j, n));
    s.U.front() = 0.0;
    s.U.back() = 0.0;
    const auto fs = boundary_flux(s, c.mu);
    s.gp = fs.gprime;
    s.hp = fs.hprime;
    s.zeta = *std::max_element(s.U.begin(), s.U.end());
    return s;
}

double stable_dt(const SolverState& s, const SolverConfig& c) {
    const double dx = (s.h - s.g) / static_cast<double>(s.U.size() - 1);
    const double vmax = std::max(std::abs(s.gp), std::abs(s.hp));
    const double dt = std::min(dx * dx, vmax > 0.0 ? dx / vmax : dx * dx);
    return c.dt_safety * dt;
}

namespace {

struct Workspace {
    std::vector<double> x, coef;
};

// Thomas algorithm for the step matrix: 1 + 2r on the diagonal, -r off it,
// except the two end couplings (-1.25 r). The elimination coefficients of a
// Toeplitz matrix settle after a few rows, which removes the division from
// the recurrence for the rest. The right-hand side is produced row by row by
// `rhs` (called once per row, in order) and `emit` receives the solution from
// the last row back to the first.
template <class Rhs, class Emit>
void solve_step_matrix(double r, std::size_t m, Rhs&& rhs, Emit&& emit, std::vector<double>& x, Workspace& ws) {
    const double d = 1.0 + 2.0 * r;
    x.resize(m);
    ws.coef.resize(m);
    double inv = 1.0 / d;
    double cf = -1.25 * r * inv;
    ws.coef[0] = cf;
    x[0] = rhs(0) * inv;
    std::size_t i = 1;
    for (; i + 1 < m; ++i) {
        const double next_inv = 1.0 / (d + r * cf);
        const double next_cf = -r * next_inv;
        const bool settled = next_cf == cf && next_inv == inv;
        inv = next_inv;
        cf = next_cf;
        ws.coef[i] = cf;
        x[i] = (rhs(i) + r * x[i - 1]) * inv;
        if (settled) {
            ++i;
            break;
        }
    }
    const std::size_t settled_from = i;
    const double rinv = r * inv;
    for (; i + 1 < m; ++i) x[i] = rhs(i) * inv + rinv * x[i - 1];
    const double last_inv = 1.0 / (d + 1.25 * r * cf);
    x[m - 1] = (rhs(m - 1) + 1.25 * r * x[m - 2]) * last_inv;
    emit(m - 1, x[m - 1]);
    std::size_t k = m - 1;
    for (; k-- > settled_from;) {
        x[k] -= cf * x[k + 1];
        emit(k, x[k]);
    }
    for (++k; k-- > 0;) {
        x[k] -= ws.coef[k] * x[k + 1];
        emit(k, x[k]);
    }
}

// Conservative form on the reference interval, J = (h - g)/2:
//   (J U)_t = d/dy [ (2/L) U_y + J a U ] + J f(U).
// Cells are centred on interior nodes; the two end faces sit on y = +-1 and
// carry the one-sided stencil flux, half old and half new, so that the mass
// change matches the front motion up to the time lag of that flux.
void step_into(const SolverState& s, double dt, const SolverConfig& c, double cap, SolverState& out, Workspace& ws) {
    const auto& nl = c.nl;
    const std::size_t n = s.U.size();
    const std::size_t m = n - 2;
    const double dy = 2.0 / static_cast<double>(n - 1);
    const auto tc = front_fix(s);

    out.t = s.t + dt;
    out.g = s.g + dt * s.gp;
    out.h = s.h + dt * s.hp;
    const double J0 = 0.5 * (s.h - s.g);
    const double J1 = 0.5 * (out.h - out.g);
    const double r = dt / (J1 * J1 * dy * dy);
    const double lam = dt / (J1 * dy);
    const double inv_J1 = 1.0 / J1;

    // Advective flux J a U at the interior faces y_{j+1/2}, zero at y = +-1;
    // J0 a(y) is linear in y.
    const double slope = J0 * 0.5 * (tc.a_right - tc.a_left);
    const double base = J0 * 0.5 * (tc.a_right + tc.a_left);
    const double c_adv = dt / dy * inv_J1;
    const double c_old = J0 * inv_J1;
    const double* U = s.U.data();
    // Old halves of the end-face diffusive fluxes: u_x(g) = -g'/mu, u_x(h) = -h'/mu.
    const double end_left = -0.5 * lam * (-s.gp / c.mu);
    const double end_right = 0.5 * lam * (-s.hp / c.mu);

    double face_left = 0.0;
    auto rhs = [&](std::size_t k) {
        const std::size_t j = k + 1;
        double face_right = 0.0;
        if (j + 2 < n) {
            const double y = -1.0 + (static_cast<double>(j) + 0.5) * dy;
            face_right = (base + slope * y) * 0.5 * (U[j] + U[j + 1]);
        }
        double v = c_old * (U[j] + dt * nl(U[j])) + c_adv * (face_right - face_left);
        face_left = face_right;
        if (k == 0) v += end_left;
        if (k == m - 1) v += end_right;
        return v;
    };

    out.U.resize(n);
    out.U[0] = 0.0;
    out.U[n - 1] = 0.0;
    double top = 0.0;
    double sum = 0.0;
    double* V = out.U.data();
    auto emit = [&](std::size_t k, double& v) {
        // Flush values headed for the subnormal range.
        if (std::abs(v) < 1e-250) v = 0.0;
        V[k + 1] = v;
        top = std::max(top, v);
        sum += v;
    };
    solve_step_matrix(r, m, rhs, emit, ws.x, ws);
    if (!std::isfinite(sum) || top > cap) {
        throw BlowupError("max U exceeded the blow-up cap " + std::to_string(cap) + " at t=" + std::to_string(out.t));
    }
    const auto fs = boundary_flux(out, c.mu, true, c.tol.sign_tol);
    out.gp = fs.gprime;
    out.hp = fs.hprime;

    // RK4 for the comparison ODE zeta' = f(zeta).
    const double z = s.zeta;
    const double k1 = nl(z);
    const double k2 = nl(z + 0.5 * dt * k1);
    const double k3 = nl(z + 0.5 * dt * k2);
    const double k4 = nl(z + dt * k3);
    out.zeta = z + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Context {
    const SolverConfig& c;
    double cap = 0.0;
    double u_bound = 0.0;  // max(|u0|, 1)
    double mass0 = 0.0;
    double K = 0.0;
};

Context make_context(const SolverConfig& c) {
    const auto s0 = initial_state(c);
    Context ctx{c};
    const double m0 = *std::max_element(s0.U.begin(), s0.U.end());
    ctx.u_bound = std::max(m0, 1.0);
    ctx.cap = c.tol.blowup_factor * ctx.u_bound;
    ctx.mass0 = snapshot_of(s0).mass();
    ctx.K = c.nl.sup_slope();
    return ctx;
}

void note(Run& r, const std::string& name, double excess, double t, double tol) {
    auto& st = r.checks[name];
    ++st.evaluations;
    if (excess > tol) {
        if (st.violations == 0) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s violated at t=%.6g by %.3e", name.c_str(), t, excess);
            r.warnings.emplace_back(buf);
        }
        ++st.violations;
        st.worst = std::max(st.worst, excess);
    }
}

void snapshot_checks(Run& r, const SolverState& s, const Context& ctx) {
    const auto& c = ctx.c;
    const double tol = c.tol.check_tol;
    const double top = *std::max_element(s.U.begin(), s.U.end());
    const double bottom = *std::min_element(s.U.begin(), s.U.end());
    note(r, "overshoot", std::max(top - ctx.u_bound - c.tol.overshoot_tol, -bottom - c.tol.overshoot_tol), s.t, 0.0);
    note(r, "zeta_bound", top - s.zeta, s.t, tol);
    if (ctx.K > 0.0 && s.t > 0.0) {
        const double bound = std::exp(ctx.K * s.t) / (2.0 * std::sqrt(std::numbers::pi * s.t)) * ctx.mass0;
        note(r, "heat_bound", top - bound, s.t, tol);
    }
    // U increases in x left of -h0 and decreases right of h0.
    const std::size_t n = s.U.size();
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double x0 = 0.5 * ((s.g + s.h) + node_y(j, n) * (s.h - s.g));
        const double x1 = 0.5 * ((s.g + s.h) + node_y(j + 1, n) * (s.h - s.g));
        if (x1 <= -c.h0) worst = std::max(worst, s.U[j] - s.U[j + 1]);
        if (x0 >= c.h0) worst = std::max(worst, s.U[j + 1] - s.U[j]);
    }
    note(r, "outer_monotone", worst, s.t, tol);
}

void advance(Run& r, SolverState s, const Context& ctx, double t_max, const Monitor& monitor) {
    const auto& c = ctx.c;
    const double eps_t = 1e-12 * std::max(1.0, t_max);
    double next_snap = r.snapshots.empty() ? 0.0 : r.snapshots.back().t + c.snapshot_every;
    if (r.snapshots.empty()) {
        r.fronts.push_back({s.t, s.g, s.h, s.gp, s.hp});
        r.snapshots.push_back(snapshot_of(s));
        snapshot_checks(r, s, ctx);
        next_snap = c.snapshot_every;
        if (monitor) {
            if (auto term = monitor(r.snapshots.back())) {
                r.termination = *term;
                r.final_state = std::move(s);
                return;
            }
        }
    }

    Workspace ws;
    SolverState next;
    std::size_t since_record = 0;
    r.termination = Termination::TMax;
    while (s.t < t_max - eps_t) {
        const double target = std::min(next_snap, t_max);
        const double dt = std::min(stable_dt(s, c), target - s.t);
        try {
            step_into(s, dt, c, ctx.cap, next, ws);
        } catch (const BlowupError& e) {
            r.warnings.emplace_back(e.what());
            r.termination = Termination::Blowup;
            r.snapshots.push_back(snapshot_of(s));
            break;
        }
        std::swap(s, next);
        ++r.steps;
        if (++since_record >= static_cast<std::size_t>(c.front_stride)) {
            r.fronts.push_back({s.t, s.g, s.h, s.gp, s.hp});
            since_record = 0;
        }
        note(r, "center_bound", std::abs(s.g + s.h) - 2.0 * c.h0, s.t, -1e-300);
        note(r, "front_monotone", std::max(next.h - s.h, s.g - next.g), s.t, c.tol.check_tol);

        const bool at_snap = s.t >= next_snap - eps_t;
        const bool at_end = s.t >= t_max - eps_t;
        if (at_snap || at_end) {
            if (at_snap) next_snap += c.snapshot_every;
            if (since_record != 0) {
                r.fronts.push_back({s.t, s.g, s.h, s.gp, s.hp});
                since_record = 0;
            }
            r.snapshots.push_back(snapshot_of(s));
            snapshot_checks(r, s, ctx);
            if (monitor) {
                if (auto term = monitor(r.snapshots.back())) {
                    r.termination = *term;
                    break;
                }
            }
            if (c.stop_on_vanish && r.snapshots.back().max_u() <= c.tol.vanish_tol) {
                r.termination = Termination::VanishTol;
                break;
            }
        }
    }
    r.final_state = std::move(s);
}

}  // namespace

Snapshot snapshot_of(const SolverState& s) { return Snapshot{s.t, s.g, s.h, s.U}; }

SolverState step(const SolverState& state, double dt, const SolverConfig& config, double blowup_cap) {
    SolverState out;
    Workspace ws;
    step_into(state, dt, config, blowup_cap, out, ws);
    return out;
}

Run run(const SolverConfig& config, const Monitor& monitor) {
    const auto ctx = make_context(config);
    Run r;
    r.config_hash = config_hash(config);
    advance(r, initial_state(config), ctx, config.t_max, monitor);
    return r;
}

Run extend(const Run& previous, const SolverConfig& config, double t_max, const Monitor& monitor) {
    const auto ctx = make_context(config);
    Run r = previous;
    if (previous.termination == Termination::Blowup) return r;
    advance(r, previous.final_state, ctx, t_max, monitor);
    return r;
}

}  // namespace stefan_front
