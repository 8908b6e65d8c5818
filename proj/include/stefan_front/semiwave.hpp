#pragma once

// Semi-waves: the trajectory leaving the saddle (1,0) backwards, the
// travelling-wave speed c0, the free-boundary speed c*(mu) with its profile,
// near-critical finite waves, and the bistable ground state.

#include <utility>
#include <vector>

#include "stefan_front/nonlinearity.hpp"
#include "stefan_front/phase_plane.hpp"

namespace stefan_front {

struct SaddleTrajectory {
    double c = 0.0;
    double eps_start = 0.0;
    double initial_slope = 0.0;  // (c - sqrt(c^2 - 4 f'(1))) / 2
    std::vector<PhasePoint> samples;  // q decreasing from 1 - eps_start
    double q_c = 0.0;     // where P reaches 0 (0 if it reaches q = 0 first)
    double p_at_0 = 0.0;  // P(0), 0 when q_c > 0
    /// max |P_eps - P_{eps/2}| on [0.1, 0.9] (NaN when not computed).
    double richardson_defect = 0.0;

    /// P(q) by cubic Hermite interpolation (dP/dq = c - f/P); 0 below q_c.
    double operator()(double q, const Nonlinearity& nl) const;
};

struct SemiWaveOptions {
    double eps_start = 1e-6;
    double p_zero_tol = 1e-9;
    double bracket_width = 1e-8;
    double profile_tail_tol = 1e-6;
    double profile_dz = 0.01;
    numerics::OdeOptions ode{1e-11, 1e-14, 1e-4, 0.02, 4'000'000};
};

struct SemiWaveResult {
    double c0 = 0.0;
    double c_star = 0.0;
    double mu = 0.0;
    double omega_star = 0.0;  // c_star / mu = q*'(0)
    std::vector<ProfilePoint> profile;  // (z, q*(z)), uniform in z
    std::vector<std::pair<double, double>> xi_trace;  // (c, P_c(0) - c/mu)
};

/// Backward integration of the stable branch into the saddle (1,0).
/// With `richardson` set, also integrates from eps_start/2 and records the
/// largest difference on [0.1, 0.9].
SaddleTrajectory saddle_trajectory(const Nonlinearity& nl, double c, double eps_start = 1e-6,
                                   bool richardson = true, const SemiWaveOptions& options = {});

/// P_c(0) without keeping samples.
double saddle_value_at_zero(const Nonlinearity& nl, double c, const SemiWaveOptions& options = {});

/// Travelling-wave speed: sup of c for which P_c stays positive on [0,1).
double c0(const Nonlinearity& nl, const SemiWaveOptions& options = {});

/// Semi-wave speed for Stefan coefficient mu and its profile.
SemiWaveResult c_star(const Nonlinearity& nl, double mu, const SemiWaveOptions& options = {});

/// Same, reusing a known c0.
SemiWaveResult c_star(const Nonlinearity& nl, double mu, double known_c0, const SemiWaveOptions& options);

/// Wave from (0, omega*) with speed c < c*: reaches p = 0 at Q^c < 1.
FiniteWave perturbed_finite_wave(const Nonlinearity& nl, double mu, double c, const SemiWaveOptions& options = {});

/// Even positive solution on the line with peak theta_bar (bistable only);
/// tails cut where v < tail_tol.
StationaryProfile ground_state(const Nonlinearity& nl, double tail_tol = 1e-6);

}  // namespace stefan_front
