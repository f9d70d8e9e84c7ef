#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "loschmidt/core.hpp"
#include "loschmidt/engine.hpp"
#include "loschmidt/linalg.hpp"

using namespace loschmidt;
using test::error_of;

TEST_CASE("model names round trip") {
    for (ModelId m : {ModelId::tfic, ModelId::lmg, ModelId::qrm, ModelId::ssh}) {
        CHECK(parse_model(model_name(m)) == m);
    }
    CHECK_THROWS_AS(parse_model("dicke"), DomainError);
}

TEST_CASE("system size sentinel") {
    CHECK(SystemSize::infinite().is_infinite());
    CHECK_THROWS_AS(SystemSize::infinite().value(), DomainError);
    CHECK(SystemSize::finite(8).as_int() == 8);
    CHECK_THROWS_AS(SystemSize::finite(8.5).as_int(), DomainError);
    CHECK_THROWS_AS(SystemSize::finite(0), DomainError);
    CHECK_THROWS_AS(SystemSize::finite(-3), DomainError);
    CHECK_THROWS_AS(SystemSize::finite(INFINITY), DomainError);
}

TEST_CASE("quench spec validation") {
    const QuenchSpec ok{ModelId::tfic, SystemSize::finite(8), 0.1, 0.1};
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.lambda_i() == doctest::Approx(0.9));
    CHECK(ok.lambda_f() == doctest::Approx(0.8));

    auto bad = ok;
    bad.delta_lambda = -0.1;
    CHECK(error_of([&] { bad.validate(); }) == "delta_lambda must be >= 0");
    bad = ok;
    bad.g = -0.1;
    CHECK(error_of([&] { bad.validate(); }) == "g must be >= 0");
    bad = ok;
    bad.delta_lambda = 1.0;  // lambda_i = 0
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = ok;
    bad.g = 2.0;  // lambda_f = -1.1
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = ok;
    bad.gamma = 1.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = ok;
    bad.size = SystemSize::finite(7);
    CHECK(error_of([&] { bad.validate(); }) == "size must be an even integer >= 4");
    bad.size = SystemSize::finite(2);
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = ok;
    bad.extra.n_max = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = ok;
    bad.g = NAN;
    CHECK_THROWS_AS(bad.validate(), DomainError);

    // QRM sizes need not be integers; infinite is valid for every model at spec level.
    QuenchSpec q{ModelId::qrm, SystemSize::finite(1234.5), 0.1, 0.1};
    CHECK_NOTHROW(q.validate());
    q.size = SystemSize::infinite();
    CHECK_NOTHROW(q.validate());
}

TEST_CASE("default exponents") {
    CHECK(CriticalExponents::for_model(ModelId::tfic).nu == 1.0);
    CHECK(CriticalExponents::for_model(ModelId::tfic).z == 1.0);
    CHECK(CriticalExponents::for_model(ModelId::ssh).nu == 1.0);
    CHECK(CriticalExponents::for_model(ModelId::ssh).z == 1.0);
    for (ModelId m : {ModelId::lmg, ModelId::qrm}) {
        CHECK(CriticalExponents::for_model(m).nu == 1.5);
        CHECK(CriticalExponents::for_model(m).z == doctest::Approx(1.0 / 3.0));
    }
}

TEST_CASE("time grid") {
    const TimeGrid g(0.0, 2.0, 5);
    CHECK(g.spacing() == 0.5);
    const auto ts = g.times();
    REQUIRE(ts.size() == 5);
    CHECK(ts.front() == 0.0);
    CHECK(ts.back() == 2.0);
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] > ts[i - 1]);
    CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(TimeGrid(1.0, 1.0, 3), DomainError);
    CHECK_THROWS_AS(TimeGrid(-1.0, 1.0, 3), DomainError);
    CHECK_THROWS_AS(TimeGrid(0.0, INFINITY, 3), DomainError);
}

TEST_CASE("make_time_grid windows") {
    SUBCASE("QRM infinite, lambda_f = 0.6") {
        const QuenchSpec s{ModelId::qrm, SystemSize::infinite(), 0.2, 0.2};
        const auto g = make_time_grid(s, 2.0, 1001);
        CHECK(g.t_start() == 0.0);
        CHECK(g.t_end() == doctest::Approx(2.0 * std::numbers::pi / 0.8).epsilon(1e-12));
        CHECK(g.steps() == 1001);
    }
    SUBCASE("two steps gives the endpoints") {
        const QuenchSpec s{ModelId::qrm, SystemSize::infinite(), 0.2, 0.2};
        const auto ts = make_time_grid(s, 1.0, 2).times();
        REQUIRE(ts.size() == 2);
        CHECK(ts[0] == 0.0);
        CHECK(ts[1] == doctest::Approx(std::numbers::pi / 0.8));
    }
    SUBCASE("LMG infinite, lambda_f = 0.6") {
        const QuenchSpec s{ModelId::lmg, SystemSize::infinite(), 0.2, 0.2};
        CHECK(make_time_grid(s, 1.0, 11).t_end() == doctest::Approx(std::numbers::pi / 1.6).epsilon(1e-12));
    }
    SUBCASE("gap closure at infinite size") {
        const QuenchSpec q{ModelId::qrm, SystemSize::infinite(), 0.0, 0.0};
        CHECK(error_of([&] { make_time_grid(q, 1.0, 11); }) == "divergent period");
        const QuenchSpec l{ModelId::lmg, SystemSize::infinite(), 0.0, 0.0};
        CHECK(error_of([&] { make_time_grid(l, 1.0, 11); }) == "divergent period");
    }
    SUBCASE("nonpositive periods") {
        const QuenchSpec s{ModelId::qrm, SystemSize::infinite(), 0.2, 0.2};
        CHECK_THROWS_AS(make_time_grid(s, 0.0, 11), DomainError);
    }
    SUBCASE("finite TFIC uses the smallest mode energy") {
        const QuenchSpec s{ModelId::tfic, SystemSize::finite(8), 0.1, 0.1};
        const double k = std::numbers::pi / 8;
        const double eps = 2.0 * std::sqrt(0.64 - 1.6 * std::cos(k) + 1.0);
        CHECK(make_time_grid(s, 1.0, 11).t_end() == doctest::Approx(std::numbers::pi / eps).epsilon(1e-12));
    }
}

TEST_CASE("refine_first_minimum") {
    SUBCASE("cos^2 on [0, 2]") {
        const TimeGrid g(0.0, 2.0, 41);
        const auto rec = refine_first_minimum([](double t) { return std::cos(t) * std::cos(t); }, g);
        CHECK(rec.refined);
        CHECK(rec.t_min == doctest::Approx(std::numbers::pi / 2).epsilon(1e-8));
        CHECK(rec.l_min <= 1e-15);
    }
    SUBCASE("constant function") {
        const TimeGrid g(0.0, 2.0, 41);
        CHECK(error_of([&] { refine_first_minimum([](double) { return 1.0; }, g); }) == "minimum not bracketed");
    }
    SUBCASE("monotone function has its minimum at an endpoint") {
        const TimeGrid g(0.0, 1.0, 41);
        CHECK(error_of([&] { refine_first_minimum([](double t) { return 1.0 - t; }, g); }) ==
              "minimum not bracketed");
    }
    SUBCASE("QRM analytic example") {
        const QuenchSpec s{ModelId::qrm, SystemSize::infinite(), 0.2, 0.2};
        const auto rec = first_minimum(s, 1.0, 2001);
        // near a quadratic minimum t is resolvable only to ~sqrt(machine eps)
        CHECK(rec.t_min == doctest::Approx(std::numbers::pi / 1.6).epsilon(1e-6));
        CHECK(std::abs(rec.l_min - 0.96) <= 1e-12);
        CHECK(rec.spec == s);
    }
    SUBCASE("refined value never exceeds grid minimum and stays in the window") {
        const auto f = [](double t) { return 0.6 + 0.4 * std::cos(3.1 * t + 0.3 * std::sin(7 * t)); };
        for (std::size_t steps : {17U, 33U, 101U, 1001U}) {
            const TimeGrid g(0.0, 2.0, steps);
            const auto samples = sample(f, g);
            const auto rec = refine_first_minimum(f, samples, g);
            CHECK(rec.l_min <= *std::min_element(samples.begin(), samples.end()));
            CHECK(rec.t_min > 0.0);
            CHECK(rec.t_min < 2.0);
        }
    }
    SUBCASE("wrong sample count") {
        const TimeGrid g(0.0, 1.0, 5);
        CHECK_THROWS_AS(refine_first_minimum([](double t) { return t; }, std::vector<double>(4), g), DomainError);
    }
}

TEST_CASE("eig_symmetric small examples") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 1, 0;
    const auto d = eig_symmetric(a);
    CHECK(d.values(0) == doctest::Approx(-1.0));
    CHECK(d.values(1) == doctest::Approx(1.0));

    const Eigen::MatrixXd diag = Eigen::Vector3d(3.0, -1.0, 2.0).asDiagonal();
    const auto dd = eig_symmetric(diag);
    CHECK(dd.values(0) == -1.0);
    CHECK(dd.values(1) == 2.0);
    CHECK(dd.values(2) == 3.0);
    // columns are unit vectors picking the sorted diagonal entries
    Eigen::Matrix3d perm;
    perm << 0, 0, 1, 1, 0, 0, 0, 1, 0;
    CHECK((dd.vectors.cwiseAbs() - perm).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eig_symmetric random 50x50 postconditions") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd a(50, 50);
    for (int i = 0; i < 50; ++i) {
        for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
    }
    const auto d = eig_symmetric(a);
    const Eigen::MatrixXd rec = d.vectors * d.values.asDiagonal() * d.vectors.transpose();
    CHECK((a - rec).cwiseAbs().maxCoeff() <= 1e-9 * a.cwiseAbs().maxCoeff());
    CHECK((d.vectors.transpose() * d.vectors - Eigen::MatrixXd::Identity(50, 50)).cwiseAbs().maxCoeff() <= 1e-10);
    for (int i = 1; i < 50; ++i) CHECK(d.values(i) >= d.values(i - 1));
}

TEST_CASE("eig_symmetric errors") {
    Eigen::MatrixXd a(2, 2);
    a << 0, 1, 1.1, 0;
    CHECK(error_of([&] { eig_symmetric(a); }) == "matrix is not symmetric");
    CHECK_THROWS_AS(eig_symmetric(Eigen::MatrixXd(2, 3)), DomainError);
    CHECK_THROWS_AS(eig_symmetric(Eigen::MatrixXd::Identity(10, 10), EigOptions{8, 1e-12}), DomainError);
}

TEST_CASE("banded and tridiagonal storage") {
    BandedSymmetric b(5, 2);
    b.set(0, 2, 1.5);
    b.set(3, 1, -2.0);
    b.set(4, 4, 7.0);
    CHECK(b.at(2, 0) == 1.5);
    CHECK(b.at(1, 3) == -2.0);
    CHECK(b.at(0, 4) == 0.0);
    CHECK_THROWS_AS(b.set(0, 3, 1.0), DomainError);
    const Eigen::MatrixXd d = b.dense();
    CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);

    // stride-2 coupling splits into two tridiagonal blocks
    BandedSymmetric s(5, 2);
    for (std::size_t i = 0; i < 5; ++i) s.set(i, i, static_cast<double>(i));
    s.set(0, 2, 1.0);
    s.set(2, 4, 2.0);
    s.set(1, 3, 3.0);
    const auto even = s.strided_block(0, 2);
    REQUIRE(even.dim() == 3);
    CHECK(even.diag == std::vector<double>{0.0, 2.0, 4.0});
    CHECK(even.off == std::vector<double>{1.0, 2.0});
    const auto odd = s.strided_block(1, 2);
    CHECK(odd.diag == std::vector<double>{1.0, 3.0});
    s.set(0, 1, 0.5);
    CHECK_THROWS_AS(s.strided_block(0, 2), DomainError);

    // tridiagonal and dense solves agree
    const auto t = eig_symmetric(even);
    const auto dn = eig_symmetric(even.dense());
    CHECK((t.values - dn.values).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("spectral echo and energy variance") {
    Eigen::MatrixXd h(2, 2);
    h << 1, 0, 0, -1;
    const auto d = eig_symmetric(h);
    Eigen::VectorXd psi(2);
    psi << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const SpectralEcho e(d, psi);
    // |cos t|^2 for a two-level system split by 2
    for (double t : {0.0, 0.3, 1.0, 2.5}) CHECK(e(t) == doctest::Approx(std::cos(t) * std::cos(t)).epsilon(1e-14));
    CHECK(energy_variance(h, psi) == doctest::Approx(1.0));
    CHECK(energy_variance(h, ground_state(d)) == doctest::Approx(0.0));
    const auto gs = ground_state(eig_symmetric(-h));
    CHECK(gs(0) == doctest::Approx(1.0));
}

TEST_CASE("short_time_coefficient") {
    CHECK_THROWS_AS(short_time_coefficient([](double) { return 1.0; }, 0.0), DomainError);
    CHECK(short_time_coefficient([](double) { return 1.0; }, 1e-4) == 0.0);
    // cos^2 t = 1 - t^2 + ...
    CHECK(short_time_coefficient([](double t) { return std::cos(t) * std::cos(t); }, 1e-4) ==
          doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("parallel_for covers every index once and propagates errors") {
    for (unsigned jobs : {1U, 2U, 5U}) {
        std::vector<int> hits(37, 0);
        parallel_for(hits.size(), Execution{jobs, Reduction::parallel}, [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits) CHECK(h == 1);
    }
    CHECK_THROWS_AS(parallel_for(10, Execution{3, Reduction::parallel},
                                 [](std::size_t i) {
                                     if (i == 7) throw DomainError("boom");
                                 }),
                    DomainError);
    CHECK(Execution{4, Reduction::sequential}.workers() == 1);
}

TEST_CASE("sampling is independent of the worker count") {
    const QuenchSpec s{ModelId::tfic, SystemSize::finite(64), 0.02, 0.01};
    const auto p = prepare(s);
    const auto g = make_time_grid(p, 2.0, 301);
    const auto a = compute_trace(p, g, Execution{1, Reduction::sequential});
    const auto b = compute_trace(p, g, Execution{3, Reduction::parallel});
    CHECK(a.values == b.values);
}
