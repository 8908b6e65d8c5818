#include "stefan_front/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

#include "stefan_front/numerics.hpp"

namespace stefan_front {

std::string to_string(Kind kind) {
    switch (kind) {
        case Kind::Monostable: return "monostable";
        case Kind::Bistable: return "bistable";
        case Kind::Combustion: return "combustion";
        case Kind::Custom: return "custom";
    }
    return "unknown";
}

namespace {

constexpr double kPointTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kPointTol; }

std::vector<double> validation_grid(double u_cap, std::size_t n, std::optional<double> theta) {
    std::vector<double> grid;
    grid.reserve(n + 3);
    for (std::size_t i = 0; i < n; ++i) grid.push_back(u_cap * static_cast<double>(i) / static_cast<double>(n - 1));
    grid.push_back(0.0);
    grid.push_back(1.0);
    if (theta) grid.push_back(*theta);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

void require(bool ok, const std::string& what, double u) {
    if (!ok) throw ValidationError(what, u);
}

// Sign and zero conditions shared by build() and validate_on().
void check_conditions(Kind kind, const ScalarMap& f, std::optional<double> theta, std::optional<double> delta0,
                      double zero_tol, std::span<const double> grid) {
    require(std::abs(f(0.0)) <= zero_tol, "f(0)=0", 0.0);
    if (kind == Kind::Custom) return;

    require(std::abs(f(1.0)) <= zero_tol, "f(1)=0", 1.0);
    const double th = theta.value_or(0.0);
    if (kind == Kind::Bistable) require(std::abs(f(th)) <= zero_tol, "f(theta)=0", th);

    for (double u : grid) {
        if (u <= 0.0) continue;
        const double v = f(u);
        switch (kind) {
            case Kind::Monostable:
                if (near(u, 1.0)) break;
                require((1.0 - u) * v > 0.0, "(1-u)f(u) > 0", u);
                break;
            case Kind::Bistable:
                if (near(u, th) || near(u, 1.0)) break;
                if (u < th) require(v < 0.0, "f < 0 on (0,theta)", u);
                else if (u < 1.0) require(v > 0.0, "f > 0 on (theta,1)", u);
                else require(v < 0.0, "f < 0 on (1,u_cap]", u);
                break;
            case Kind::Combustion:
                if (u <= th + kPointTol) require(std::abs(v) <= zero_tol, "f = 0 on [0,theta]", u);
                else if (u < 1.0 - kPointTol) require(v > 0.0, "f > 0 on (theta,1)", u);
                else if (!near(u, 1.0)) require(v < 0.0, "f < 0 on (1,u_cap]", u);
                break;
            case Kind::Custom: break;
        }
    }

    if (kind == Kind::Combustion && delta0) {
        std::vector<double> sorted(grid.begin(), grid.end());
        std::sort(sorted.begin(), sorted.end());
        double prev = f(th);
        for (double u : sorted) {
            if (u <= th + kPointTol || u >= th + *delta0) continue;
            const double v = f(u);
            require(v >= prev - zero_tol, "f nondecreasing on (theta, theta+delta0)", u);
            prev = v;
        }
    }
}

// Maximise g over the grid, then polish with golden-section around the best
// grid point.
double grid_sup(const std::function<double(double)>& g, std::span<const double> grid) {
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = g(grid[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    if (hi > lo) {
        const auto m = numerics::golden_section_min([&](double u) { return -g(u); }, lo, hi, 1e-12);
        best_val = std::max(best_val, -m.value);
    }
    return best_val;
}

}  // namespace

double Nonlinearity::admissible_lower() const {
    switch (kind_) {
        case Kind::Monostable: return 0.0;
        case Kind::Bistable: return *theta_bar_;
        case Kind::Combustion: return *theta_;
        case Kind::Custom: break;
    }
    throw KindError("admissible peak range is defined only for monostable, bistable and combustion kinds");
}

Nonlinearity build(Kind kind, ScalarMap f, ScalarMap df, std::optional<double> theta, std::optional<double> delta0,
                   const BuildOptions& options, std::string label) {
    if (options.grid_n < 64) throw DomainError("grid_n must be at least 64");
    if (!(options.u_cap > 1.0)) throw DomainError("u_cap must exceed 1");
    if (kind == Kind::Bistable || kind == Kind::Combustion) {
        if (!theta) throw DomainError(to_string(kind) + " nonlinearity needs theta");
        if (!(*theta > 0.0 && *theta < 1.0)) throw DomainError("theta must lie in (0,1)");
    }

    Nonlinearity nl;
    nl.kind_ = kind;
    nl.f_ = std::move(f);
    nl.df_ = std::move(df);
    nl.theta_ = (kind == Kind::Bistable || kind == Kind::Combustion) ? theta : std::nullopt;
    nl.options_ = options;
    nl.label_ = std::move(label);
    if (kind == Kind::Combustion) nl.breaks_.push_back(*theta);

    const auto grid = validation_grid(options.u_cap, options.grid_n, nl.theta_);

    if (kind == Kind::Combustion && !delta0) {
        // Largest grid band above theta on which f keeps increasing, halved.
        const double th = *theta;
        double prev = nl.f_(th);
        double stop = 1.0;
        for (double u : grid) {
            if (u <= th + kPointTol) continue;
            const double v = nl.f_(u);
            if (v < prev) {
                stop = u;
                break;
            }
            prev = v;
        }
        delta0 = 0.5 * (stop - th);
    }
    if (delta0 && !(*delta0 > 0.0)) throw DomainError("delta0 must be positive");
    nl.delta0_ = kind == Kind::Combustion ? delta0 : std::nullopt;

    check_conditions(kind, nl.f_, nl.theta_, nl.delta0_, options.zero_tol, grid);

    nl.fp0_ = nl.df_(0.0);
    nl.fp1_ = nl.df_(1.0);
    switch (kind) {
        case Kind::Monostable:
            require(nl.fp0_ > 0.0, "f'(0) > 0", 0.0);
            require(nl.fp1_ < 0.0, "f'(1) < 0", 1.0);
            break;
        case Kind::Bistable:
            require(nl.fp0_ < 0.0, "f'(0) < 0", 0.0);
            require(nl.fp1_ < 0.0, "f'(1) < 0", 1.0);
            break;
        case Kind::Combustion: require(nl.fp1_ < 0.0, "f'(1) < 0", 1.0); break;
        case Kind::Custom: break;
    }

    // K: f(u)/u with its limit f'(0) at u = 0.
    const double fp0 = nl.fp0_;
    const auto& fref = nl.f_;
    const auto ratio = [&](double u) { return u <= 0.0 ? fp0 : fref(u) / u; };
    nl.sup_slope_ = std::max(0.0, grid_sup(ratio, grid));
    nl.sup_val_ = grid_sup(fref, grid);
    for (double u : grid) {
        require(fref(u) <= nl.sup_slope_ * u + options.zero_tol, "f(u) <= K u", u);
    }

    if (kind != Kind::Custom) {
        const double mass = primitive(nl, 0.0, 1.0);
        require(mass > 0.0, "int_0^1 f > 0", 1.0);
        nl.omega0_ = std::sqrt(2.0 * mass);
    }
    if (kind == Kind::Bistable) {
        const double th = *nl.theta_;
        nl.theta_bar_ = numerics::bisect_root([&](double x) { return primitive(nl, 0.0, x); }, th, 1.0, 1e-12);
    }
    return nl;
}

void validate_on(const Nonlinearity& nl, std::span<const double> grid) {
    check_conditions(nl.kind(), [&](double u) { return nl(u); }, nl.theta(), nl.delta0(), nl.options().zero_tol,
                     grid);
    for (double u : grid) {
        if (u < 0.0 || u > nl.u_cap()) continue;
        require(nl(u) <= nl.sup_slope() * u + nl.options().zero_tol, "f(u) <= K u", u);
    }
}

double primitive(const Nonlinearity& nl, double a, double b) {
    if (a == b) return 0.0;
    const auto f = [&](double u) { return nl(u); };
    // Split at the kinks so the adaptive rule sees smooth pieces.
    double total = 0.0;
    double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double tol = nl.options().quad_tol;
    for (double br : nl.breakpoints()) {
        if (br > lo && br < hi) {
            total += numerics::adaptive_simpson(f, lo, br, 0.5 * tol);
            lo = br;
        }
    }
    total += numerics::adaptive_simpson(f, lo, hi, 0.5 * tol);
    return b >= a ? total : -total;
}

double primitive_local(const Nonlinearity& nl, double a, double b) {
    return numerics::gauss_legendre_split([&](double u) { return nl(u); }, a, b, nl.breakpoints());
}

double theta_bar(const Nonlinearity& nl) {
    if (nl.kind() != Kind::Bistable || !nl.theta_bar()) throw KindError("theta_bar requires a bistable nonlinearity");
    return *nl.theta_bar();
}

double omega0(const Nonlinearity& nl) {
    if (!nl.omega0()) throw KindError("omega0 is defined only for monostable, bistable and combustion kinds");
    return *nl.omega0();
}

double sup_slope(const Nonlinearity& nl) { return nl.sup_slope(); }
double sup_val(const Nonlinearity& nl) { return nl.sup_val(); }

Nonlinearity logistic(const BuildOptions& options) {
    return build(
        Kind::Monostable, [](double u) { return u * (1.0 - u); }, [](double u) { return 1.0 - 2.0 * u; },
        std::nullopt, std::nullopt, options, "logistic");
}

Nonlinearity cubic_bistable(double theta, const BuildOptions& options) {
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0,1)");
    return build(
        Kind::Bistable, [theta](double u) { return u * (u - theta) * (1.0 - u); },
        [theta](double u) { return -3.0 * u * u + 2.0 * (1.0 + theta) * u - theta; }, theta, std::nullopt, options,
        "cubic_bistable");
}

Nonlinearity combustion(double theta, const BuildOptions& options) {
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0,1)");
    return build(
        Kind::Combustion, [theta](double u) { return u <= theta ? 0.0 : (u - theta) * (1.0 - u); },
        [theta](double u) { return u <= theta ? 0.0 : 1.0 + theta - 2.0 * u; }, theta, 0.5 * (1.0 - theta), options,
        "combustion");
}

Nonlinearity custom_polynomial(std::vector<double> coefficients, const BuildOptions& options) {
    auto value = [c = coefficients](double u) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
        return acc;
    };
    auto slope = [c = coefficients](double u) {
        double acc = 0.0;
        for (std::size_t k = c.size(); k-- > 1;) acc = acc * u + static_cast<double>(k) * c[k];
        return acc;
    };
    return build(Kind::Custom, value, slope, std::nullopt, std::nullopt, options, "custom");
}

}  // namespace stefan_front
