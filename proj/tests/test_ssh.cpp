#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "loschmidt/engine.hpp"
#include "loschmidt/ssh.hpp"

using namespace loschmidt;
using std::numbers::pi;

TEST_CASE("band energy") {
    CHECK(ssh::band_energy(1.0, pi) == doctest::Approx(0.0));
    for (double lam : {0.2, 1.0, 3.0}) CHECK(ssh::band_energy(lam, 0.0) == doctest::Approx(1.0 + lam));
    CHECK(ssh::band_energy(0.5, pi / 2) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
}

TEST_CASE("momentum grid has exactly N modes") {
    const auto ks = ssh::momentum_grid(8);
    REQUIRE(ks.size() == 8);
    CHECK(ks.front() == doctest::Approx(-pi));
    CHECK(ks.back() == doctest::Approx(3 * pi / 4));
    CHECK_THROWS_AS(ssh::momentum_grid(6 + 1), DomainError);
    CHECK_THROWS_AS(ssh::momentum_grid(2), DomainError);
}

TEST_CASE("mode overlaps") {
    for (double k : ssh::momentum_grid(32)) {
        const auto m = ssh::make_mode(0.4, 1.7, k);
        CHECK(std::abs(m.overlap) <= 1.0 + 1e-12);
        CHECK(m.e_i == doctest::Approx(ssh::band_energy(0.4, k)));
    }
    // axis momenta give exactly unit factors
    const auto zero = ssh::make_mode(0.5, 2.0, 0.0);
    CHECK(std::abs(zero.overlap) == 1.0);
    CHECK(zero.factor(1.234) == 1.0);
    const auto edge = ssh::make_mode(0.5, 2.0, -pi);
    CHECK(std::abs(edge.overlap) == 1.0);
    CHECK(edge.factor(0.77) == 1.0);
}

TEST_CASE("echo trace basics") {
    const TimeGrid g(0.0, 8.0, 201);
    const auto tr = ssh::echo_trace(16, 0.1, 0.1, g);
    test::check_echo_bounds(tr);
    const auto flat = ssh::echo_trace(16, 0.1, 0.0, g);
    for (double v : flat.values) CHECK(std::abs(v - 1.0) <= 1e-12);
}

TEST_CASE("closed form matches the per-k oracle") {
    SUBCASE("N=8, 0.9 -> 0.8, t = 1") {
        const TimeGrid g(0.0, 1.0, 2);
        const auto a = ssh::echo_trace(8, 0.1, 0.1, g);
        const auto b = ssh::oracle_echo(8, 0.1, 0.1, g);
        CHECK(std::abs(a.values[1] - b.values[1]) <= 1e-12);
    }
    SUBCASE("N=4 at arbitrary times") {
        const TimeGrid g(0.0, 17.3, 173);
        CHECK(test::max_abs_diff(ssh::echo_trace(4, 0.3, 0.25, g).values,
                                 ssh::oracle_echo(4, 0.3, 0.25, g).values) <= 1e-12);
    }
    SUBCASE("cross-TPT quench from the trivial side") {
        const TimeGrid g(0.0, 10.0, 401);
        for (int n : {8, 32, 128}) {
            const auto a = ssh::echo_trace_lambdas(n, 0.5, 2.0, g);
            const auto b = ssh::oracle_echo_lambdas(n, 0.5, 2.0, g);
            test::check_echo_bounds(a);
            CHECK(test::max_abs_diff(a.values, b.values) <= 1e-12);
        }
    }
    SUBCASE("quench onto the transition keeps the k = pi factor at one") {
        const TimeGrid g(0.0, 10.0, 101);
        const auto a = ssh::echo_trace_lambdas(8, 0.7, 1.0, g);
        const auto b = ssh::oracle_echo_lambdas(8, 0.7, 1.0, g);
        CHECK(test::max_abs_diff(a.values, b.values) <= 1e-12);
    }
    SUBCASE("quench from the transition uses the fixed lower vector") {
        const TimeGrid g(0.0, 10.0, 101);
        const auto a = ssh::echo_trace_lambdas(8, 1.0, 0.8, g);
        const auto b = ssh::oracle_echo_lambdas(8, 1.0, 0.8, g);
        CHECK(test::max_abs_diff(a.values, b.values) <= 1e-12);
    }
}

TEST_CASE("single-mode oracle for a trivial quench") {
    const auto amp = ssh::oracle_amplitude(0.6, 0.6, pi / 2, 3.3);
    CHECK(std::norm(amp) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("inverse couplings give the same echo on a rescaled clock") {
    // E(1/l, k) = E(l, k) / l and the overlap is unchanged.
    const double li = 0.7;
    const double lf = 0.55;
    const ssh::ProductEcho a(24, li, lf);
    const ssh::ProductEcho b(24, 1.0 / li, 1.0 / lf);
    for (double t : {0.0, 0.4, 1.9, 6.5}) CHECK(b(t) == doctest::Approx(a(t / lf)).epsilon(1e-12));
}

TEST_CASE("hopping domain") {
    CHECK_THROWS_AS(ssh::ProductEcho(8, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(ssh::ProductEcho(8, -0.5, 0.4), DomainError);
    CHECK_THROWS_AS(prepare(QuenchSpec{ModelId::ssh, SystemSize::finite(8), 0.5, 0.6}), DomainError);
    CHECK(test::error_of([] { prepare(QuenchSpec{ModelId::ssh, SystemSize::infinite(), 0.1, 0.1}); }) ==
          "ssh has no closed form at infinite size");
}

TEST_CASE("gap skips the axis modes") {
    const ssh::ProductEcho e(8, 0.9, 1.0);
    CHECK(e.gap() > 0.0);
    CHECK(e.gap() == doctest::Approx(ssh::band_energy(1.0, 3 * pi / 4)));
}
