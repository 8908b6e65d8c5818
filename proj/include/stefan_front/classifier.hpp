#pragma once

// Long-time fate of a run: certified vanishing/spreading tests applied to any
// snapshot, end-of-run heuristics, the amplitude threshold sigma* and the
// asymptotic front speed.

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stefan_front/phase_plane.hpp"
#include "stefan_front/solver.hpp"

namespace stefan_front {

enum class Outcome { Spreading, Vanishing, TransitionBistable, TransitionCombustion, Undecided };
enum class Certificate { ThetaCap, MassCap, SmallAmpMono, WidthMono, DominatesVZ, Heuristic };

std::string to_string(Outcome outcome);
std::string to_string(Certificate certificate);

struct Verdict {
    Outcome outcome = Outcome::Undecided;
    Certificate certificate = Certificate::Heuristic;
    double t = 0.0;  // snapshot time the verdict refers to
    std::map<std::string, double> evidence;
};

struct ClassifierOptions {
    double spread_tol = 1e-2;
    double vanish_tol = 1e-4;
    double trans_tol = 5e-2;
    /// v_Z for the domination test is built at Z = critical length + margin.
    double cert_z_margin = 0.02;
};

/// Small-amplitude bound for monostable f on an interval of half-length ell:
/// sigma_1 = s cos(pi/(2+delta)); 0 when ell >= pi/(2 sqrt f'(0)).
double small_amplitude_bound(const Nonlinearity& nl, double mu, double ell);

/// Precomputes what the certificates need (v_Z, bounds) for one f and mu.
class Certifier {
public:
    Certifier(const Nonlinearity& nl, double mu, const ClassifierOptions& options = {});

    /// First certificate that applies to the snapshot, vanishing tests first.
    std::optional<Verdict> certify(const Snapshot& snap) const;

    /// Monitor for run(): stops at the first certificate.
    Monitor monitor() const;

    const Nonlinearity& nonlinearity() const { return nl_; }
    double mu() const { return mu_; }
    const ClassifierOptions& options() const { return options_; }
    /// Half-length used for v_Z (bistable/combustion only).
    std::optional<double> vz_half_length() const { return vz_Z_; }
    const std::optional<StationaryProfile>& vz() const { return vz_; }

private:
    bool dominates_vz(const Snapshot& snap, double& center) const;

    Nonlinearity nl_;
    double mu_;
    ClassifierOptions options_;
    std::optional<double> vz_Z_;
    std::optional<StationaryProfile> vz_;
    double mass_cap_ = 0.0;
};

/// One-shot certificate check (builds a Certifier).
std::optional<Verdict> certify(const Snapshot& snap, const Nonlinearity& nl, double mu,
                               const ClassifierOptions& options = {});

/// Sup-norm distance between a snapshot recentred at its argmax and the
/// bistable ground state, over the window where the ground state exceeds
/// 0.01. Also returns the shift gamma_hat = -(argmax location).
struct GroundStateMatch {
    double t = 0.0;
    double distance = std::numeric_limits<double>::infinity();
    double gamma_hat = 0.0;
};
GroundStateMatch ground_state_distance(const Snapshot& snap, const StationaryProfile& v_inf);

/// Closest approach of a run to the ground state over its snapshots.
GroundStateMatch best_ground_state_match(const Run& run, const StationaryProfile& v_inf);

/// max |U - theta| over |x| <= h/4.
double plateau_deviation(const Snapshot& snap, double theta);

/// Certificate verdict if any snapshot fires one, else heuristics on the last
/// snapshot.
Verdict classify_run(const Run& run, const Nonlinearity& nl, double mu, const ClassifierOptions& options = {});
Verdict classify_run(const Run& run, const Certifier& certifier);

struct ThresholdOptions {
    double tol = 1e-3;      // absolute bracket width
    double rel_tol = 0.0;   // or width <= rel_tol * sigma_lo
    int budget = 30;        // maximum number of runs
    int extensions = 2;     // times an undecided run is continued (t_max doubled)
};

struct ThresholdEval {
    double sigma = 0.0;
    Verdict verdict;
};

struct ThresholdResult {
    double sigma_lo = 0.0;
    double sigma_hi = std::numeric_limits<double>::infinity();
    double width = std::numeric_limits<double>::infinity();
    double sigma_lo_certified = 0.0;  // from the t = 0 certificates alone
    std::vector<ThresholdEval> evals;
    bool budget_hit = false;
    /// A midpoint stayed undecided after all extensions; bisection stopped.
    bool unresolved = false;
    /// Why the search stopped early, if it did.
    std::string note;

    double midpoint() const { return 0.5 * (sigma_lo + sigma_hi); }
};

/// Bracket of the amplitude threshold for u0 = sigma * phi with phi, h0, mu,
/// N, t_max taken from `base` (its sigma is ignored).
ThresholdResult sigma_star(const SolverConfig& base, const ThresholdOptions& threshold = {},
                           const ClassifierOptions& options = {});

struct SpeedEstimate {
    double c_hat = 0.0;
    double slope_h = 0.0;
    double slope_g = 0.0;      // slope of -g
    double asymmetry = 0.0;    // |slope_h - slope_g|
    double decay_slope = 0.0;  // slope of log|u(t,0) - 1| against t
    double decay_residual = 0.0;
};

/// Least-squares front speeds on [t_end/2, t_end]. NotSpreading unless the
/// verdict is Spreading.
SpeedEstimate speed_estimate(const Run& run, const Verdict& verdict);

}  // namespace stefan_front
