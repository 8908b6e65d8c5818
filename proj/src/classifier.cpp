#include "stefan_front/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stefan_front/numerics.hpp"
#include "stefan_front/semiwave.hpp"

namespace stefan_front {

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Spreading: return "spreading";
        case Outcome::Vanishing: return "vanishing";
        case Outcome::TransitionBistable: return "transition_bistable";
        case Outcome::TransitionCombustion: return "transition_combustion";
        case Outcome::Undecided: return "undecided";
    }
    return "unknown";
}

std::string to_string(Certificate certificate) {
    switch (certificate) {
        case Certificate::ThetaCap: return "theta_cap";
        case Certificate::MassCap: return "mass_cap";
        case Certificate::SmallAmpMono: return "small_amp_mono";
        case Certificate::WidthMono: return "width_mono";
        case Certificate::DominatesVZ: return "dominates_vz";
        case Certificate::Heuristic: return "heuristic";
    }
    return "unknown";
}

namespace {

bool has_theta(const Nonlinearity& nl) { return nl.kind() == Kind::Bistable || nl.kind() == Kind::Combustion; }

std::vector<ProfilePoint> thin(const std::vector<ProfilePoint>& pts, std::size_t target) {
    if (pts.size() <= target) return pts;
    std::vector<ProfilePoint> out;
    const double stride = static_cast<double>(pts.size() - 1) / static_cast<double>(target - 1);
    for (std::size_t k = 0; k < target; ++k) out.push_back(pts[static_cast<std::size_t>(std::lround(k * stride))]);
    return out;
}

void base_evidence(Verdict& v, const Snapshot& s) {
    v.t = s.t;
    v.evidence["max_u"] = s.max_u();
    v.evidence["width"] = s.h - s.g;
    v.evidence["mass"] = s.mass();
    v.evidence["gamma_hat"] = -s.x_at(s.argmax());
}

}  // namespace

double small_amplitude_bound(const Nonlinearity& nl, double mu, double ell) {
    if (nl.kind() != Kind::Monostable) throw KindError("small_amplitude_bound requires a monostable f");
    const double a = nl.fp0();
    const double pi = std::numbers::pi;
    if (!(ell > 0.0) || ell >= pi / (2.0 * std::sqrt(a))) return 0.0;
    const auto ok = [&](double d) { return pi * pi / (4.0 * (1.0 + d) * (1.0 + d) * ell * ell) - a >= 2.0 * d; };
    double hi = 1.0;
    while (ok(hi)) hi *= 2.0;
    const double delta = numerics::bisect_predicate(ok, 0.0, hi, 1e-14).lo;
    if (!(delta > 0.0)) return 0.0;

    double s = std::min(delta * delta * ell * ell / (pi * mu), nl.u_cap());
    constexpr int kScan = 4000;
    const double top = s;
    for (int i = 1; i <= kScan; ++i) {
        const double u = top * i / kScan;
        if (nl(u) > (a + delta) * u) {
            s = top * (i - 1) / kScan;
            break;
        }
    }
    return s * std::cos(pi / (2.0 + delta));
}

Certifier::Certifier(const Nonlinearity& nl, double mu, const ClassifierOptions& options)
    : nl_(nl), mu_(mu), options_(options) {
    if (!(mu > 0.0)) throw DomainError("mu must be positive");
    if (has_theta(nl_)) {
        const double theta = *nl_.theta();
        const double K = nl_.sup_slope();
        mass_cap_ = K > 0.0 ? theta * std::sqrt(2.0 * std::numbers::pi / (std::numbers::e * K))
                            : std::numeric_limits<double>::infinity();
        const double Z = critical_length(nl_).value + options_.cert_z_margin;
        vz_Z_ = Z;
        auto sp = stationary_profile(nl_, Z);
        sp.profile = thin(sp.profile, 241);
        vz_ = std::move(sp);
    }
}

bool Certifier::dominates_vz(const Snapshot& snap, double& center) const {
    const auto& vz = *vz_;
    const double Z = *vz_Z_;
    if (snap.h - snap.g < 2.0 * Z) return false;
    if (snap.max_u() < vz.q_top) return false;
    for (std::size_t j = 0; j < snap.U.size(); ++j) {
        const double x0 = snap.x_at(j);
        if (x0 - Z < snap.g || x0 + Z > snap.h || snap.U[j] < vz.q_top) continue;
        bool ok = true;
        for (const auto& p : vz.profile) {
            if (snap.value_at(x0 + p.x) < p.value) {
                ok = false;
                break;
            }
        }
        for (std::size_t i = 0; ok && i < snap.U.size(); ++i) {
            const double x = snap.x_at(i);
            if (x < x0 - Z || x > x0 + Z) continue;
            ok = snap.U[i] >= vz.value_at(x - x0);
        }
        if (ok) {
            center = x0;
            return true;
        }
    }
    return false;
}

std::optional<Verdict> Certifier::certify(const Snapshot& snap) const {
    Verdict v;
    v.certificate = Certificate::Heuristic;
    const double top = snap.max_u();
    const double width = snap.h - snap.g;

    if (has_theta(nl_)) {
        const double theta = *nl_.theta();
        if (top <= theta) {
            v.outcome = Outcome::Vanishing;
            v.certificate = Certificate::ThetaCap;
            base_evidence(v, snap);
            v.evidence["theta"] = theta;
            return v;
        }
        const double mass = snap.mass();
        if (mass <= mass_cap_) {
            v.outcome = Outcome::Vanishing;
            v.certificate = Certificate::MassCap;
            base_evidence(v, snap);
            v.evidence["mass_cap"] = mass_cap_;
            return v;
        }
    }
    if (nl_.kind() == Kind::Monostable) {
        const double limit = std::numbers::pi / std::sqrt(nl_.fp0());
        if (width < limit) {
            const double sigma1 = small_amplitude_bound(nl_, mu_, 0.5 * width);
            if (top <= sigma1) {
                v.outcome = Outcome::Vanishing;
                v.certificate = Certificate::SmallAmpMono;
                base_evidence(v, snap);
                v.evidence["sigma1"] = sigma1;
                v.evidence["width_limit"] = limit;
                return v;
            }
        }
        if (width > limit) {
            v.outcome = Outcome::Spreading;
            v.certificate = Certificate::WidthMono;
            base_evidence(v, snap);
            v.evidence["width_limit"] = limit;
            return v;
        }
    }
    if (vz_) {
        double center = 0.0;
        if (dominates_vz(snap, center)) {
            v.outcome = Outcome::Spreading;
            v.certificate = Certificate::DominatesVZ;
            base_evidence(v, snap);
            v.evidence["vz_half_length"] = *vz_Z_;
            v.evidence["vz_center"] = center;
            v.evidence["vz_top"] = vz_->q_top;
            return v;
        }
    }
    return std::nullopt;
}

Monitor Certifier::monitor() const {
    return [this](const Snapshot& s) -> std::optional<Termination> {
        const auto v = certify(s);
        if (!v) return std::nullopt;
        return v->outcome == Outcome::Spreading ? Termination::SpreadCertified : Termination::VanishCertified;
    };
}

std::optional<Verdict> certify(const Snapshot& snap, const Nonlinearity& nl, double mu, const ClassifierOptions& options) {
    return Certifier(nl, mu, options).certify(snap);
}

GroundStateMatch ground_state_distance(const Snapshot& snap, const StationaryProfile& v_inf) {
    GroundStateMatch m;
    m.t = snap.t;
    const double xstar = snap.x_at(snap.argmax());
    m.gamma_hat = -xstar;
    double worst = 0.0;
    for (const auto& p : v_inf.profile) {
        if (p.value <= 0.01) continue;
        worst = std::max(worst, std::abs(snap.value_at(xstar + p.x) - p.value));
    }
    m.distance = worst;
    return m;
}

GroundStateMatch best_ground_state_match(const Run& run, const StationaryProfile& v_inf) {
    GroundStateMatch best;
    for (const auto& s : run.snapshots) {
        const auto m = ground_state_distance(s, v_inf);
        if (m.distance < best.distance) best = m;
    }
    return best;
}

double plateau_deviation(const Snapshot& snap, double theta) {
    double worst = 0.0;
    const double reach = 0.25 * snap.h;
    for (std::size_t j = 0; j < snap.U.size(); ++j) {
        if (std::abs(snap.x_at(j)) <= reach) worst = std::max(worst, std::abs(snap.U[j] - theta));
    }
    return worst;
}

Verdict classify_run(const Run& run, const Nonlinearity& nl, double mu, const ClassifierOptions& options) {
    return classify_run(run, Certifier(nl, mu, options));
}

Verdict classify_run(const Run& run, const Certifier& cert) {
    for (const auto& s : run.snapshots) {
        if (auto v = cert.certify(s)) return *v;
    }
    Verdict v;
    v.certificate = Certificate::Heuristic;
    if (run.snapshots.empty()) return v;
    const auto& opt = cert.options();
    const auto& nl = cert.nonlinearity();
    const auto& last = run.snapshots.back();
    base_evidence(v, last);

    double core_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < last.U.size(); ++j) {
        if (std::abs(last.x_at(j)) <= 0.5 * last.h) core_min = std::min(core_min, last.U[j]);
    }
    v.evidence["core_min"] = core_min;

    // Front still advancing at (at least) half its recent average rate.
    bool advancing = false;
    if (run.fronts.size() >= 2) {
        const auto& end = run.fronts.back();
        const double t_half = 0.5 * end.t;
        auto it = std::lower_bound(run.fronts.begin(), run.fronts.end(), t_half,
                                   [](const FrontRecord& f, double t) { return f.t < t; });
        if (it != run.fronts.end() && end.t > it->t) {
            const double mean_rate = (end.h - it->h) / (end.t - it->t);
            advancing = end.hp > 0.0 && end.hp >= 0.5 * mean_rate;
        }
    }

    const double top = last.max_u();
    if (core_min >= 1.0 - opt.spread_tol && advancing) {
        v.outcome = Outcome::Spreading;
        return v;
    }
    if (top <= opt.vanish_tol) {
        v.outcome = Outcome::Vanishing;
        return v;
    }
    if (nl.kind() == Kind::Combustion) {
        const double theta = *nl.theta();
        const double dev = plateau_deviation(last, theta);
        v.evidence["plateau_deviation"] = dev;
        if (std::abs(top - theta) <= opt.trans_tol && dev <= opt.trans_tol) {
            v.outcome = Outcome::TransitionCombustion;
            return v;
        }
    }
    if (nl.kind() == Kind::Bistable) {
        const auto gs = ground_state(nl);
        const auto m = ground_state_distance(last, gs);
        v.evidence["ground_state_distance"] = m.distance;
        if (m.distance <= opt.trans_tol) {
            v.outcome = Outcome::TransitionBistable;
            return v;
        }
    }
    v.outcome = Outcome::Undecided;
    return v;
}

namespace {

bool decided(const Verdict& v) { return v.outcome == Outcome::Spreading || v.outcome == Outcome::Vanishing; }

}  // namespace

ThresholdResult sigma_star(const SolverConfig& base, const ThresholdOptions& th, const ClassifierOptions& options) {
    if (th.budget < 10) throw DomainError("sigma_star: budget must allow at least 10 runs");
    if (!(th.tol > 0.0) && !(th.rel_tol > 0.0)) throw DomainError("sigma_star: tol must be positive");
    const auto& nl = base.nl;
    const Certifier cert(nl, base.mu, options);

    // phi on the solver grid: sup and trapezoid integral.
    SolverConfig probe = base;
    probe.u0.sigma = 1.0;
    const auto s0 = snapshot_of(initial_state(probe));
    const double phi_max = s0.max_u();
    const double phi_int = s0.mass();

    double lo = 0.0;
    if (has_theta(nl)) {
        const double theta = *nl.theta();
        const double K = nl.sup_slope();
        lo = theta / phi_max;
        if (K > 0.0) lo = std::max(lo, theta * std::sqrt(2.0 * std::numbers::pi / (std::numbers::e * K)) / phi_int);
    } else if (nl.kind() == Kind::Monostable) {
        lo = small_amplitude_bound(nl, base.mu, base.h0) / phi_max;
    } else {
        throw KindError("sigma_star requires a monostable, bistable or combustion f");
    }
    lo *= 1.0 - 1e-12;

    ThresholdResult res;
    res.sigma_lo_certified = lo;
    const auto evaluate = [&](double sigma) {
        SolverConfig c = base;
        c.u0.sigma = sigma;
        const auto mon = cert.monitor();
        Run r = run(c, mon);
        Verdict v = classify_run(r, cert);
        double t_end = c.t_max;
        for (int k = 0; k < th.extensions && !decided(v) && r.termination != Termination::Blowup; ++k) {
            t_end *= 2.0;
            r = extend(r, c, t_end, mon);
            v = classify_run(r, cert);
        }
        if (r.termination == Termination::Blowup) {
            throw BlowupError("sigma_star: run at sigma=" + std::to_string(sigma) + " blew up");
        }
        res.evals.push_back({sigma, v});
        return v.outcome;
    };
    const auto budget_left = [&] { return static_cast<int>(res.evals.size()) < th.budget; };

    if (lo > 0.0 && evaluate(lo) != Outcome::Vanishing) {
        throw MonotoneViolation("sigma_star: the certified lower amplitude did not vanish");
    }
    double hi = std::numeric_limits<double>::infinity();
    double sigma = lo > 0.0 ? 2.0 * lo : 1.0 / phi_max;
    while (!std::isfinite(hi)) {
        if (!budget_left()) {
            res.budget_hit = true;
            res.note = "no spreading run within the budget";
            break;
        }
        Outcome out;
        try {
            out = evaluate(sigma);
        } catch (const SignError& e) {
            res.budget_hit = true;
            res.note = std::string("doubling stopped: ") + e.what();
            break;
        } catch (const BlowupError& e) {
            res.budget_hit = true;
            res.note = std::string("doubling stopped: ") + e.what();
            break;
        }
        if (out == Outcome::Spreading) hi = sigma;
        else {
            if (out == Outcome::Vanishing) lo = sigma;
            sigma *= 2.0;
        }
    }
    if (std::isfinite(hi)) {
        const auto target = [&] { return std::max(th.tol, th.rel_tol * lo); };
        while (hi - lo > target()) {
            if (!budget_left()) {
                res.budget_hit = true;
                res.note = "bracket not refined to tol within the budget";
                break;
            }
            const double mid = 0.5 * (lo + hi);
            const auto out = evaluate(mid);
            if (out == Outcome::Spreading) hi = mid;
            else if (out == Outcome::Vanishing) lo = mid;
            else {
                res.unresolved = true;
                res.note = "midpoint run undecided at sigma=" + std::to_string(mid);
                break;
            }
        }
    }
    res.sigma_lo = lo;
    res.sigma_hi = hi;
    res.width = hi - lo;

    for (const auto& a : res.evals) {
        for (const auto& b : res.evals) {
            if (a.verdict.outcome == Outcome::Vanishing && b.verdict.outcome == Outcome::Spreading &&
                a.sigma >= b.sigma) {
                throw MonotoneViolation("sigma_star: vanishing at sigma=" + std::to_string(a.sigma) +
                                        " but spreading at sigma=" + std::to_string(b.sigma));
            }
        }
    }
    if (res.evals.empty() && lo == 0.0) throw BudgetExhausted("sigma_star: no run completed");
    return res;
}

SpeedEstimate speed_estimate(const Run& run, const Verdict& verdict) {
    if (verdict.outcome != Outcome::Spreading) throw NotSpreading("speed_estimate: run is not spreading");
    if (run.fronts.size() < 4) throw NotSpreading("speed_estimate: front history too short");
    const double t_end = run.fronts.back().t;
    std::vector<double> t, h, g;
    for (const auto& f : run.fronts) {
        if (f.t >= 0.5 * t_end) {
            t.push_back(f.t);
            h.push_back(f.h);
            g.push_back(-f.g);
        }
    }
    SpeedEstimate e;
    e.slope_h = numerics::fit_line(t, h).slope;
    e.slope_g = numerics::fit_line(t, g).slope;
    e.c_hat = 0.5 * (e.slope_h + e.slope_g);
    e.asymmetry = std::abs(e.slope_h - e.slope_g);

    std::vector<double> ts, logs;
    for (const auto& s : run.snapshots) {
        if (s.t < 0.5 * t_end) continue;
        const double d = std::abs(s.value_at(0.0) - 1.0);
        if (d > 1e-14) {
            ts.push_back(s.t);
            logs.push_back(std::log(d));
        }
    }
    if (ts.size() >= 2) {
        const auto fit = numerics::fit_line(ts, logs);
        e.decay_slope = fit.slope;
        e.decay_residual = fit.rms_residual;
    }
    return e;
}

}  // namespace stefan_front
