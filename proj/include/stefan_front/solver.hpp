#pragma once

// Free-boundary reaction-diffusion solver.
//
//   u_t = u_xx + f(u),  g(t) < x < h(t)
//   u = 0, h' = -mu u_x at x = h,  g' = -mu u_x at x = g
//
// The moving interval is mapped to y in [-1, 1]; diffusion is implicit,
// advection, reaction and the fronts are explicit.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stefan_front/nonlinearity.hpp"

namespace stefan_front {

enum class InitialFamily { CosineBump, QuadBump, Samples };

std::string to_string(InitialFamily family);

struct InitialData {
    InitialFamily family = InitialFamily::CosineBump;
    double sigma = 1.0;
    /// phi is multiplied by (1 + skew x / h0); |skew| < 1 keeps it positive.
    double skew = 0.0;
    /// Samples family: values of phi on a uniform grid over [-h0, h0],
    /// endpoints included (so front() and back() are 0).
    std::vector<double> samples;
};

/// phi(x) for x in [-h0, h0] (0 outside); the amplitude sigma is not applied.
double shape_value(const InitialData& data, double h0, double x);

struct Tolerances {
    double overshoot_tol = 1e-6;
    double check_tol = 1e-6;
    double sign_tol = 1e-10;
    double blowup_factor = 10.0;
    double vanish_tol = 1e-4;
};

struct SolverConfig {
    Nonlinearity nl = logistic();
    double mu = 1.0;
    double h0 = 1.0;
    InitialData u0;
    int N = 401;
    double dt_safety = 0.4;
    double t_max = 10.0;
    double snapshot_every = 1.0;
    Tolerances tol;
    /// Stop with VanishTol once max U <= tol.vanish_tol.
    bool stop_on_vanish = false;
    /// Keep every k-th step in the front history (1 = every step).
    int front_stride = 1;
};

/// Throws DomainError for an invalid config and ValidationError when u0 is
/// not in the admissible class on the grid.
void validate(const SolverConfig& config);

/// FNV-1a hash of a canonical text form of the config.
std::uint64_t config_hash(const SolverConfig& config);

struct SolverState {
    double t = 0.0;
    double g = 0.0;
    double h = 0.0;
    double gp = 0.0;
    double hp = 0.0;
    std::vector<double> U;  // nodes y_j = -1 + 2j/(N-1)
    double zeta = 0.0;      // reaction ODE bound zeta' = f(zeta)
};

struct Snapshot {
    double t = 0.0;
    double g = 0.0;
    double h = 0.0;
    std::vector<double> U;

    double x_at(std::size_t j) const;
    double y_at(std::size_t j) const;
    double max_u() const;
    std::size_t argmax() const;
    /// Trapezoid rule for int_g^h u dx.
    double mass() const;
    /// Linear interpolation in x; 0 outside [g, h].
    double value_at(double x) const;
};

struct FrontRecord {
    double t = 0.0;
    double g = 0.0;
    double h = 0.0;
    double gp = 0.0;
    double hp = 0.0;
};

enum class Termination { TMax, VanishTol, SpreadCertified, VanishCertified, Blowup };

std::string to_string(Termination term);

struct CheckStat {
    std::size_t evaluations = 0;
    std::size_t violations = 0;
    double worst = 0.0;  // largest violation amount (0 when none)
};

struct Run {
    std::uint64_t config_hash = 0;
    std::vector<Snapshot> snapshots;
    std::vector<FrontRecord> fronts;
    Termination termination = Termination::TMax;
    std::map<std::string, CheckStat> checks;
    std::vector<std::string> warnings;
    SolverState final_state;
    std::size_t steps = 0;
};

struct TransformCoefficients {
    double diffusion = 0.0;  // 4 / (h - g)^2
    double a_left = 0.0;     // a(-1) = 2 g' / (h - g)
    double a_right = 0.0;    // a(1)  = 2 h' / (h - g)

    /// a(y) = [g'(1 - y) + h'(1 + y)] / (h - g)
    double advection(double y) const { return 0.5 * (a_left * (1.0 - y) + a_right * (1.0 + y)); }
};

TransformCoefficients front_fix(const SolverState& state);

struct FrontSpeeds {
    double gprime = 0.0;
    double hprime = 0.0;
};

/// Stefan speeds from the one-sided second-order stencil. With `check_signs`
/// a front moving inward by more than `sign_tol` raises SignError.
FrontSpeeds boundary_flux(const SolverState& state, double mu, bool check_signs = false, double sign_tol = 1e-10);

/// Initial state on N nodes (fronts at -h0, h0, speeds from the flux).
SolverState initial_state(const SolverConfig& config);

/// Stable step size for the current state.
double stable_dt(const SolverState& state, const SolverConfig& config);

/// One IMEX step. Throws BlowupError when max U exceeds `blowup_cap`.
SolverState step(const SolverState& state, double dt, const SolverConfig& config, double blowup_cap);

/// Returns a termination to stop the run early, checked at every snapshot.
using Monitor = std::function<std::optional<Termination>(const Snapshot&)>;

Run run(const SolverConfig& config, const Monitor& monitor = {});

/// Continue `previous` (same config) up to `t_max`, appending snapshots,
/// fronts and checks.
Run extend(const Run& previous, const SolverConfig& config, double t_max, const Monitor& monitor = {});

/// Snapshot of a state.
Snapshot snapshot_of(const SolverState& state);

}  // namespace stefan_front
