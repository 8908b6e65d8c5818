#include <doctest.h>

#include <cmath>
#include <random>

#include "stefan_front/nonlinearity.hpp"

using namespace stefan_front;

namespace {

// Smaller root in (theta, 1) of x^2/4 - (1+theta) x/3 + theta/2 = 0.
double theta_bar_closed(double th) {
    const double b = (1.0 + th) / 3.0;
    return 2.0 * (b - std::sqrt(b * b - th / 2.0));
}

}  // namespace

TEST_SUITE("nonlinearity") {

TEST_CASE("logistic constants") {
    const auto nl = logistic();
    CHECK(nl.kind() == Kind::Monostable);
    CHECK(nl.fp0() == doctest::Approx(1.0));
    CHECK(nl.fp1() == doctest::Approx(-1.0));
    CHECK(nl.sup_slope() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(nl.sup_val() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(primitive(nl, 0.0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    CHECK(primitive(nl, 0.3, 0.3) == 0.0);
}

TEST_CASE("bistable cubic") {
    const auto nl = cubic_bistable(0.25);
    CHECK(nl.kind() == Kind::Bistable);
    CHECK(primitive(nl, 0.0, 1.0) == doctest::Approx(1.0 / 12.0 - 0.25 / 6.0).epsilon(1e-10));
    CHECK(*nl.omega0() == doctest::Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-9));
    const double tb = theta_bar(nl);
    CHECK(tb == doctest::Approx(theta_bar_closed(0.25)).epsilon(1e-9));
    CHECK(tb == doctest::Approx(0.392375).epsilon(1e-6));
    CHECK(tb > 0.25);
    CHECK(tb < 1.0);
    CHECK(std::abs(primitive(nl, 0.0, tb)) <= 1e-9);
}

TEST_CASE("unbalanced cubic is rejected") {
    CHECK_THROWS_AS(cubic_bistable(0.6), ValidationError);
    CHECK_THROWS_AS(cubic_bistable(1.5), DomainError);
    CHECK_THROWS_AS(combustion(0.0), DomainError);
}

TEST_CASE("theta_bar ordering in theta") {
    double prev = 0.0;
    for (double th : {0.1, 0.2, 0.3}) {
        const double tb = theta_bar(cubic_bistable(th));
        CHECK(tb == doctest::Approx(theta_bar_closed(th)).epsilon(1e-9));
        CHECK(tb > prev);
        prev = tb;
    }
}

TEST_CASE("combustion constants") {
    const auto nl = combustion(0.25);
    CHECK(nl.kind() == Kind::Combustion);
    CHECK(primitive(nl, 0.0, 1.0) == doctest::Approx(0.0703125).epsilon(1e-10));
    CHECK(*nl.omega0() == doctest::Approx(0.375).epsilon(1e-9));
    CHECK(nl(0.1) == 0.0);
    CHECK(nl(0.25) == 0.0);
    CHECK(nl(0.5) > 0.0);
    CHECK_THROWS_AS(theta_bar(nl), KindError);
}

TEST_CASE("custom keeps only f(0) = 0") {
    const auto nl = custom_polynomial({0.0, 1.0, -1.0});
    CHECK(nl.kind() == Kind::Custom);
    CHECK(nl(0.5) == doctest::Approx(0.25));
    CHECK_THROWS_AS(custom_polynomial({0.1, 1.0}), ValidationError);
}

TEST_CASE("property: revalidation on a denser random grid") {
    std::mt19937 rng(11);
    for (const auto& nl : {logistic(), cubic_bistable(0.25), combustion(0.25), cubic_bistable(0.1)}) {
        std::uniform_real_distribution<double> u(0.0, nl.u_cap());
        std::vector<double> grid(10 * nl.options().grid_n);
        for (auto& g : grid) g = u(rng);
        CHECK_NOTHROW(validate_on(nl, grid));
        for (double x : grid) CHECK(nl(x) <= nl.sup_slope() * x + 1e-10);
    }
}

TEST_CASE("property: primitive is additive") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    for (const auto& nl : {logistic(), cubic_bistable(0.25), combustion(0.25)}) {
        for (int k = 0; k < 20; ++k) {
            double p[3] = {u(rng), u(rng), u(rng)};
            std::sort(p, p + 3);
            const double lhs = primitive(nl, p[0], p[2]);
            const double rhs = primitive(nl, p[0], p[1]) + primitive(nl, p[1], p[2]);
            CHECK(std::abs(lhs - rhs) <= 2.0 * nl.options().quad_tol);
        }
        CHECK(std::abs(*nl.omega0() * *nl.omega0() - 2.0 * primitive(nl, 0.0, 1.0)) <= 1e-9);
    }
}

}
