#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stefan_front/semiwave.hpp"

using namespace stefan_front;

namespace {

double P0_cubic(double q, double th) {
    const auto F = [th](double x) { return -th * x * x / 2 + (1 + th) * x * x * x / 3 - x * x * x * x / 4; };
    return std::sqrt(2.0 * (F(1.0) - F(q)));
}

}  // namespace

TEST_SUITE("semiwave") {

TEST_CASE("c = 0 trajectory is P0") {
    const auto nl = cubic_bistable(0.25);
    const auto tr = saddle_trajectory(nl, 0.0);
    CHECK(tr.p_at_0 == doctest::Approx(*nl.omega0()).epsilon(1e-6));
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) CHECK(tr(q, nl) == doctest::Approx(P0_cubic(q, 0.25)).epsilon(1e-6));
    // linear start off the saddle
    const double c = 0.2;
    const auto t2 = saddle_trajectory(nl, c);
    CHECK(t2.initial_slope == doctest::Approx((c - std::sqrt(c * c - 4 * nl.fp1())) / 2).epsilon(1e-12));
    CHECK(t2.richardson_defect < 1e-7);
}

TEST_CASE("c0 values") {
    const auto bi = cubic_bistable(0.25);
    CHECK(std::abs(c0(bi) - (1 - 2 * 0.25) / std::sqrt(2.0)) <= 1e-4);
    const double cl = c0(logistic());
    CHECK(cl <= 2.0);
    CHECK(cl >= 2.0 - 1e-3);
    const auto comb = combustion(0.25);
    const double cc = c0(comb);
    CHECK(cc > 0.0);
    CHECK(cc < 2 * std::sqrt(comb.sup_slope()));
}

TEST_CASE("saddle trajectory past c0") {
    const auto bi = cubic_bistable(0.25);
    const double c = c0(bi);
    CHECK(saddle_trajectory(bi, c + 0.05).q_c > 0.0);
    const auto mono = logistic();
    const auto tr = saddle_trajectory(mono, 2.0);
    CHECK(tr.p_at_0 <= 1e-6);
    for (double q : {0.05, 0.3, 0.6, 0.9}) CHECK(tr(q, mono) > 0.0);
}

TEST_CASE("property: P_c ordering in c") {
    for (const auto& nl : {logistic(), cubic_bistable(0.25), combustion(0.25)}) {
        const double cz = c0(nl);
        const auto a = saddle_trajectory(nl, 0.3 * cz);
        const auto b = saddle_trajectory(nl, 0.7 * cz);
        for (int i = 0; i < 20; ++i) {
            const double q = 0.05 * i;
            CHECK(a(q, nl) > b(q, nl));
        }
    }
}

TEST_CASE("combustion trajectory is linear below theta") {
    const auto nl = combustion(0.25);
    const double c = 0.5 * c0(nl);
    const auto tr = saddle_trajectory(nl, c);
    REQUIRE(tr.q_c == 0.0);
    CHECK(std::abs(tr(0.125, nl) - (tr.p_at_0 + c * 0.125)) <= 1e-8);
}

TEST_CASE("c_star ladder in mu") {
    const auto nl = cubic_bistable(0.25);
    const double cz = c0(nl);
    double prev = 0.0;
    for (double mu : {1.0, 10.0, 100.0, 1000.0}) {
        const auto r = c_star(nl, mu, cz, {});
        CHECK(r.c_star > prev);
        CHECK(r.c_star < cz);
        CHECK(r.c_star < mu * *nl.omega0());
        prev = r.c_star;
    }
    CHECK(prev > 0.95 * cz);
    CHECK(c_star(nl, 1e-3, cz, {}).c_star < 1e-3 * *nl.omega0());
}

TEST_CASE("semi-wave profile") {
    for (const auto& nl : {logistic(), cubic_bistable(0.25), combustion(0.25)}) {
        const double mu = 2.0;
        SemiWaveOptions opt;
        opt.profile_dz = 0.001;
        const auto r = c_star(nl, mu, opt);
        CHECK(r.omega_star == doctest::Approx(r.c_star / mu));
        const auto& p = r.profile;
        REQUIRE(p.size() > 10);
        CHECK(p.front().value == 0.0);
        CHECK(p.back().value >= 1 - opt.profile_tail_tol - 1e-9);
        for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i].value > p[i - 1].value);
        // fourth-order one-sided slope at z = 0
        const double h = p[1].x - p[0].x;
        const double slope = (-25 * p[0].value + 48 * p[1].value - 36 * p[2].value + 16 * p[3].value - 3 * p[4].value) / (12 * h);
        CHECK(std::abs(mu * slope - r.c_star) <= 1e-6);
        // q'' - c q' + f(q) = 0
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            const double d2 = (p[i + 1].value - 2 * p[i].value + p[i - 1].value) / (h * h);
            const double d1 = (p[i + 1].value - p[i - 1].value) / (2 * h);
            worst = std::max(worst, std::abs(d2 - r.c_star * d1 + nl(p[i].value)));
        }
        CHECK(worst <= 1e-4);
        // xi decreasing in c
        auto tr = r.xi_trace;
        std::sort(tr.begin(), tr.end());
        for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr[i].second < tr[i - 1].second);
        CHECK(r.c0 <= 2 * std::sqrt(nl.sup_slope()) + 1e-8);
        CHECK(r.c_star > 0.0);
        CHECK(r.c_star < r.c0);
    }
}

TEST_CASE("perturbed finite waves") {
    const auto nl = cubic_bistable(0.25);
    const double mu = 2.0;
    const auto cs = c_star(nl, mu);
    double prev_z = 0.0, prev_q = 0.0;
    for (double k : {0.5, 0.9, 0.99}) {
        const auto fw = perturbed_finite_wave(nl, mu, k * cs.c_star);
        CHECK(fw.q_end < 1.0);
        CHECK(std::isfinite(fw.z_end));
        CHECK(fw.z_end > prev_z);
        CHECK(fw.q_end > prev_q);
        CHECK(k * cs.c_star < mu * fw.omega);
        prev_z = fw.z_end;
        prev_q = fw.q_end;
    }
    const auto small = perturbed_finite_wave(nl, mu, 1e-6);
    CHECK(small.q_end == doctest::Approx(q_top(nl, cs.omega_star)).epsilon(1e-4));
}

TEST_CASE("ground state") {
    const auto nl = cubic_bistable(0.25);
    const auto gs = ground_state(nl);
    CHECK(gs.q_top == doctest::Approx(0.392375).epsilon(1e-6));
    const auto& p = gs.profile;
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i].x == -p[p.size() - 1 - i].x);
        CHECK(p[i].value == p[p.size() - 1 - i].value);
    }
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        const double hm = p[i].x - p[i - 1].x, hp = p[i + 1].x - p[i].x;
        if (hm <= 0 || hp <= 0) continue;
        const double d2 = 2 * ((p[i + 1].value - p[i].value) / hp - (p[i].value - p[i - 1].value) / hm) / (hm + hp);
        worst = std::max(worst, std::abs(d2 + nl(p[i].value)));
    }
    CHECK(worst <= 1e-4);
    CHECK_THROWS_AS(ground_state(logistic()), KindError);
}

}
