#pragma once

// Phase-plane tools for q'' - c q' + f(q) = 0 written as q' = p, p' = c p - f(q):
// time maps, critical half-lengths, stationary profiles and waves of finite
// length.

#include <optional>
#include <vector>

#include "stefan_front/nonlinearity.hpp"
#include "stefan_front/numerics.hpp"

namespace stefan_front {

struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
};

/// One sample of a spatial profile: abscissa (z or x) and value.
struct ProfilePoint {
    double x = 0.0;
    double value = 0.0;
};

enum class TrajectoryEnd { PHitZero, QReachedTarget, StepLimit };

struct PhaseTrajectory {
    double c = 0.0;
    std::vector<PhasePoint> samples;  // q strictly monotone
    PhasePoint start;
    PhasePoint end;
    TrajectoryEnd terminated_by = TrajectoryEnd::StepLimit;
};

/// Largest |dp/dq - (c - f(q)/p)| / (1 + |c|) over consecutive sample pairs,
/// evaluated at midpoints. Pairs whose midpoint p is below `p_floor` are
/// skipped (the slope is unbounded where p vanishes).
double phase_residual(const PhaseTrajectory& traj, const Nonlinearity& nl, double p_floor = 1e-3);

struct FiniteWave {
    double c = 0.0;
    double omega = 0.0;   // initial slope p(0)
    double q_end = 0.0;   // q where p returns to 0
    double z_end = 0.0;   // length of the wave
    std::vector<ProfilePoint> profile;  // (z, q(z)) on [0, z_end]
    PhaseTrajectory trajectory;
};

struct StationaryProfile {
    double Z = 0.0;               // half-length
    double q_top = 0.0;           // v(0)
    double boundary_slope = 0.0;  // v'(-Z)
    std::vector<ProfilePoint> profile;  // (x, v(x)), x increasing, symmetric

    /// Linear interpolation of the samples; 0 outside the support.
    double value_at(double x) const;
};

struct CriticalLength {
    double value = 0.0;            // Z'_M, Z_B or Z_C
    std::optional<double> z_m;     // pi / (2 sqrt f'(0)), monostable only
    double argmin_q = 0.0;         // peak at which the time map is smallest
    bool multiple_minima = false;  // coarse scan saw more than one dip
};

/// sqrt(omega^2 - 2 int_0^q f): the c = 0 trajectory through (0, omega).
double p0(const Nonlinearity& nl, double omega, double q);

/// Peak q reached by the c = 0 trajectory through (0, omega).
double q_top(const Nonlinearity& nl, double omega);

/// Half-length of the symmetric stationary profile with peak q.
double time_map(const Nonlinearity& nl, double q);

CriticalLength critical_length(const Nonlinearity& nl);

/// Maximal positive solution of v'' + f(v) = 0 on (-Z, Z), v(+-Z) = 0.
StationaryProfile stationary_profile(const Nonlinearity& nl, double Z);

struct FiniteWaveOptions {
    numerics::OdeOptions ode{1e-11, 1e-13, 1e-4, 0.01, 2'000'000};
    double q_ceiling_eps = 1e-9;  // NoTermination once q passes 1 - eps
};

/// Trajectory of q' = p, p' = c p - f(q) from (0, omega) to its first p = 0.
FiniteWave finite_wave(const Nonlinearity& nl, double c, double omega, const FiniteWaveOptions& options = {});

/// Half profile of the even solution with peak `peak` of v'' + f(v) = 0 using
/// the first integral |v'| = sqrt(2 int_v^peak f). Returns (distance from the
/// peak, value) pairs with value decreasing from `peak` to `floor`.
std::vector<ProfilePoint> profile_from_peak(const Nonlinearity& nl, double peak, double floor,
                                            std::size_t samples = 1201);

}  // namespace stefan_front
