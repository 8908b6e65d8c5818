#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stefan_front/classifier.hpp"
#include "stefan_front/solver.hpp"

using namespace stefan_front;

namespace {

SolverState cos_state(std::size_t n, double L) {
    SolverState s;
    s.g = -L / 2;
    s.h = L / 2;
    s.U.resize(n);
    for (std::size_t j = 0; j < n; ++j) s.U[j] = std::cos(std::numbers::pi / 2 * (-1.0 + 2.0 * j / (n - 1.0)));
    s.U.front() = s.U.back() = 0.0;
    return s;
}

double conserved(const Snapshot& s, double mu) { return s.mass() + (s.h - s.g) / mu; }

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("front-fixing coefficients") {
    SolverState s;
    s.g = -1.5;
    s.h = 1.5;
    s.gp = -0.4;
    s.hp = 0.4;
    CHECK(front_fix(s).advection(0.0) == doctest::Approx(0.0));
    s.g = -1;
    s.h = 1;
    s.gp = s.hp = 0;
    const auto id = front_fix(s);
    CHECK(id.diffusion == doctest::Approx(1.0));
    CHECK(id.advection(-0.3) == 0.0);
    s.g = -0.5;
    s.h = 2.0;
    s.gp = -0.2;
    s.hp = 0.7;
    const auto tc = front_fix(s);
    CHECK(tc.advection(1.0) == doctest::Approx(2 * 0.7 / 2.5));
    // chain rule: a(y) = (1+y)/2 * 2h'/L + (1-y)/2 * 2g'/L
    CHECK(tc.advection(0.2) == doctest::Approx((-0.2 * 0.8 + 0.7 * 1.2) / 2.5));
}

TEST_CASE("boundary flux stencil") {
    const auto s = cos_state(401, 2.0);
    const auto fs = boundary_flux(s, 1.0);
    const double dy = 2.0 / 400;
    CHECK(std::abs(fs.hprime - std::numbers::pi / 2) <= 2 * dy * dy);
    CHECK(fs.gprime == doctest::Approx(-fs.hprime).epsilon(1e-12));
    SolverState z = s;
    std::fill(z.U.begin(), z.U.end(), 0.0);
    const auto f0 = boundary_flux(z, 1.0);
    CHECK(f0.gprime == 0.0);
    CHECK(f0.hprime == 0.0);
    SolverState inward = s;
    for (auto& u : inward.U) u = -u;
    CHECK_THROWS_AS(boundary_flux(inward, 1.0, true), SignError);
}

TEST_CASE("config validation") {
    SolverConfig c;
    c.N = 400;
    CHECK_THROWS_AS(validate(c), DomainError);
    c.N = 401;
    c.u0.family = InitialFamily::Samples;
    c.u0.samples = {0.0, 0.0, 0.5, 1.0, 0.5, 0.2, 0.0};
    CHECK_THROWS_AS(validate(c), ValidationError);  // flat start
    c.u0.samples = {0.0, 0.5, 1.0, 0.5, 0.0};
    CHECK_NOTHROW(validate(c));
    c.u0.samples = {0.0, 0.5, -0.1, 0.5, 0.0};
    CHECK_THROWS_AS(validate(c), ValidationError);
}

TEST_CASE("one tiny step is the identity") {
    SolverConfig c;
    c.nl = cubic_bistable(0.25);
    const auto s0 = initial_state(c);
    const auto s1 = step(s0, 1e-14, c, 100.0);
    CHECK(std::abs(s1.h - s0.h) <= 1e-12);
    for (std::size_t j = 0; j < s0.U.size(); ++j) CHECK(std::abs(s1.U[j] - s0.U[j]) <= 1e-10);
}

TEST_CASE("conservation with f = 0") {
    SolverConfig c;
    c.nl = custom_polynomial({0.0});
    c.mu = 1.5;
    c.t_max = 4.0;
    double drift[2];
    for (int i = 0; i < 2; ++i) {
        c.N = i == 0 ? 201 : 401;
        const auto r = run(c);
        const double q0 = conserved(r.snapshots.front(), c.mu);
        const double q1 = conserved(r.snapshots.back(), c.mu);
        drift[i] = std::abs(q1 - q0) / q0;
    }
    CHECK(drift[1] < 1e-5);
    CHECK(drift[1] * 3.0 <= drift[0]);
}

TEST_CASE("symmetric data keeps g = -h") {
    SolverConfig c;
    c.nl = logistic();
    c.t_max = 3;
    const auto r = run(c);
    for (const auto& f : r.fronts) CHECK(std::abs(f.g + f.h) <= 1e-12 * f.h);
}

TEST_CASE("certified terminations") {
    SolverConfig c;
    c.nl = cubic_bistable(0.25);
    c.u0.sigma = 0.2;
    const Certifier cb(c.nl, c.mu);
    CHECK(run(c, cb.monitor()).termination == Termination::VanishCertified);

    SolverConfig m;
    m.nl = logistic();
    m.h0 = 2.0;
    m.t_max = 5.0;
    const Certifier cm(m.nl, m.mu);
    CHECK(run(m, cm.monitor()).termination == Termination::SpreadCertified);
    m.h0 = 1.0;
    m.t_max = 30.0;
    const auto r = run(m, cm.monitor());
    CHECK(r.termination == Termination::SpreadCertified);
    CHECK(r.snapshots.back().h - r.snapshots.back().g > std::numbers::pi);
}

TEST_CASE("heat-kernel bound at t = 1") {
    SolverConfig c;
    c.nl = logistic();
    c.h0 = 0.5;
    c.u0.sigma = 0.1 * std::numbers::pi / (4 * c.h0);  // int phi = 0.1
    c.t_max = 1.0;
    const auto r = run(c);
    CHECK(r.snapshots.front().mass() == doctest::Approx(0.1).epsilon(1e-4));
    const double bound = std::exp(1.0) / (2 * std::sqrt(std::numbers::pi)) * 0.1;
    CHECK(bound == doctest::Approx(0.0767).epsilon(1e-3));
    CHECK(r.snapshots.back().max_u() <= bound);
    CHECK(r.checks.at("heat_bound").violations == 0);
}

TEST_CASE("property: second-order convergence of h(T)") {
    double hs[3];
    const int Ns[3] = {101, 201, 401};
    for (int i = 0; i < 3; ++i) {
        SolverConfig c;
        c.nl = logistic();
        c.N = Ns[i];
        c.t_max = 2.0;
        hs[i] = run(c).final_state.h;
    }
    const double order = std::log2((hs[0] - hs[1]) / (hs[1] - hs[2]));
    CHECK(order >= 1.8);
}

TEST_CASE("property: comparison in sigma and runtime checks") {
    for (const auto& nl : {logistic(), cubic_bistable(0.25), combustion(0.25)}) {
        SolverConfig c;
        c.nl = nl;
        c.mu = 2.0;
        c.N = 201;
        c.t_max = 5.0;
        c.u0.skew = 0.4;
        c.u0.sigma = 0.8;
        const auto lo = run(c);
        c.u0.sigma = 1.0;
        const auto hi = run(c);
        REQUIRE(lo.snapshots.size() == hi.snapshots.size());
        for (std::size_t k = 0; k < lo.snapshots.size(); ++k) {
            const auto& a = lo.snapshots[k];
            const auto& b = hi.snapshots[k];
            CHECK(a.h <= b.h);
            CHECK(a.g >= b.g);
            for (std::size_t j = 0; j < a.U.size(); ++j) CHECK(a.U[j] <= b.value_at(a.x_at(j)) + 1e-4);
        }
        for (const auto* r : {&lo, &hi}) {
            for (const char* name : {"center_bound", "front_monotone", "zeta_bound", "outer_monotone", "overshoot"}) {
                CHECK(r->checks.at(name).violations == 0);
            }
        }
    }
}

TEST_CASE("blow-up cap ends the run") {
    SolverConfig c;
    c.nl = custom_polynomial({0.0, 0.0, 1.0});  // f = u^2
    c.u0.sigma = 5.0;
    c.t_max = 5.0;
    c.tol.blowup_factor = 2.0;
    const auto r = run(c);
    CHECK(r.termination == Termination::Blowup);
    CHECK_FALSE(r.warnings.empty());
}

}
