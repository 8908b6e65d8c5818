#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stefan_front/errors.hpp"

namespace stefan_front {

enum class Kind { Monostable, Bistable, Combustion, Custom };

std::string to_string(Kind kind);

using ScalarMap = std::function<double(double)>;

struct BuildOptions {
    double u_cap = 3.0;
    std::size_t grid_n = 2001;
    double zero_tol = 1e-10;  // |f| below this counts as zero
    double quad_tol = 1e-10;
};

/// A validated reaction term f(u) together with the constants the rest of the
/// toolkit needs. Immutable once built.
class Nonlinearity {
public:
    double operator()(double u) const { return f_(u); }
    double derivative(double u) const { return df_(u); }

    Kind kind() const noexcept { return kind_; }
    std::optional<double> theta() const noexcept { return theta_; }
    std::optional<double> delta0() const noexcept { return delta0_; }
    double fp0() const noexcept { return fp0_; }
    double fp1() const noexcept { return fp1_; }
    /// K = sup_{u>0} f(u)/u, clamped at 0.
    double sup_slope() const noexcept { return sup_slope_; }
    /// F = sup_{u>=0} f(u).
    double sup_val() const noexcept { return sup_val_; }
    /// sqrt(2 * int_0^1 f); present for the three named kinds.
    std::optional<double> omega0() const noexcept { return omega0_; }
    std::optional<double> theta_bar() const noexcept { return theta_bar_; }
    double u_cap() const noexcept { return options_.u_cap; }
    const BuildOptions& options() const noexcept { return options_; }

    /// Points where f may fail to be smooth; quadrature splits there.
    std::span<const double> breakpoints() const noexcept { return breaks_; }

    /// Left end of the admissible peak range for the time map:
    /// 0 (monostable), theta_bar (bistable), theta (combustion).
    double admissible_lower() const;

    const std::string& label() const noexcept { return label_; }

    friend Nonlinearity build(Kind, ScalarMap, ScalarMap, std::optional<double>, std::optional<double>,
                              const BuildOptions&, std::string);

private:
    Nonlinearity() = default;

    Kind kind_ = Kind::Custom;
    ScalarMap f_;
    ScalarMap df_;
    std::optional<double> theta_;
    std::optional<double> delta0_;
    double fp0_ = 0.0;
    double fp1_ = 0.0;
    double sup_slope_ = 0.0;
    double sup_val_ = 0.0;
    std::optional<double> omega0_;
    std::optional<double> theta_bar_;
    std::vector<double> breaks_;
    BuildOptions options_;
    std::string label_;
};

/// Validate f against the conditions of `kind` and precompute its constants.
/// Throws ValidationError on the first violated condition and DomainError when
/// theta is missing or outside (0,1).
Nonlinearity build(Kind kind, ScalarMap f, ScalarMap df, std::optional<double> theta = std::nullopt,
                   std::optional<double> delta0 = std::nullopt, const BuildOptions& options = {},
                   std::string label = "custom");

/// Re-check every sign/zero condition of the kind on the given points.
void validate_on(const Nonlinearity& nl, std::span<const double> grid);

/// int_a^b f(s) ds by adaptive quadrature (absolute error <= quad_tol).
double primitive(const Nonlinearity& nl, double a, double b);

/// int_a^b f(s) ds by split Gauss-Legendre; accurate relative to the size of
/// short intervals, which the adaptive rule is not.
double primitive_local(const Nonlinearity& nl, double a, double b);

/// Root of int_0^x f = 0 in (theta, 1). Bistable only (KindError otherwise).
double theta_bar(const Nonlinearity& nl);
double omega0(const Nonlinearity& nl);
double sup_slope(const Nonlinearity& nl);
double sup_val(const Nonlinearity& nl);

// Catalog ------------------------------------------------------------------

/// u(1-u)
Nonlinearity logistic(const BuildOptions& options = {});
/// u(u-theta)(1-u)
Nonlinearity cubic_bistable(double theta, const BuildOptions& options = {});
/// 0 on [0,theta], (u-theta)(1-u) above.
Nonlinearity combustion(double theta, const BuildOptions& options = {});
/// sum_k coefficients[k] u^k, kind Custom.
Nonlinearity custom_polynomial(std::vector<double> coefficients, const BuildOptions& options = {});

}  // namespace stefan_front
