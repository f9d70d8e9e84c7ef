#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "loschmidt/analysis.hpp"
#include "loschmidt/engine.hpp"

using namespace loschmidt;
namespace an = loschmidt::analysis;

namespace {

const CriticalExponents kIsing{1.0, 1.0};
const CriticalExponents kMeanField{1.5, 1.0 / 3.0};

EchoTrace synthetic(double t_end, std::size_t steps, double freq, double depth = 0.3) {
    EchoTrace tr;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = t_end * static_cast<double>(i) / (steps - 1);
        tr.times.push_back(t);
        tr.values.push_back(1.0 - depth * std::pow(std::sin(freq * t), 2));
    }
    return tr;
}

}  // namespace

TEST_CASE("scaling transform on parameters") {
    const an::ScalingParams p{100, 0.02, 0.01, 3.0};
    const auto id = an::apply_transform(p, {1.0, kIsing});
    CHECK(id.size == 100);
    CHECK(id.delta_lambda == 0.02);
    CHECK(id.g == 0.01);
    CHECK(id.t == 3.0);

    const auto h = an::apply_transform(p, {0.5, kIsing});
    CHECK(h.size == doctest::Approx(200));
    CHECK(h.delta_lambda == doctest::Approx(0.01));
    CHECK(h.g == doctest::Approx(0.005));
    CHECK(h.t == doctest::Approx(6.0));

    const auto m = an::apply_transform(an::ScalingParams{500, 0.02, 0.01, 1.0}, {0.5, kMeanField});
    CHECK(m.size == doctest::Approx(1000));
    CHECK(m.delta_lambda == doctest::Approx(0.02 * std::pow(2.0, -2.0 / 3.0)).epsilon(1e-14));
    CHECK(m.g == doctest::Approx(0.01 * std::pow(2.0, -2.0 / 3.0)).epsilon(1e-14));
    CHECK(m.t == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(an::apply_transform(an::ScalingParams{INFINITY, 0.1, 0.1, 1.0}, {0.5, kIsing}), DomainError);
    CHECK_THROWS_AS(an::apply_transform(p, {0.0, kIsing}), DomainError);
    CHECK_THROWS_AS(an::apply_transform(p, {1.0, {0.0, 1.0}}), DomainError);
}

TEST_CASE("transform composition law") {
    const an::ScalingParams p{321.0, 0.013, 0.007, 2.5};
    for (const auto& e : {kIsing, kMeanField, CriticalExponents{0.7, 2.1}}) {
        for (auto [b1, b2] : {std::pair{0.5, 0.25}, std::pair{1.7, 0.3}, std::pair{3.0, 1.0 / 3.0}}) {
            const an::ScalingTransform t1{b1, e};
            const an::ScalingTransform t2{b2, e};
            const auto seq = an::apply_transform(an::apply_transform(p, t2), t1);
            const auto comp = an::apply_transform(p, t1.compose(t2));
            CHECK(t1.compose(t2).b == doctest::Approx(b1 * b2).epsilon(1e-15));
            CHECK(std::abs(seq.size - comp.size) <= 1e-14 * comp.size);
            CHECK(std::abs(seq.delta_lambda - comp.delta_lambda) <= 1e-14 * comp.delta_lambda);
            CHECK(std::abs(seq.g - comp.g) <= 1e-14 * comp.g);
            CHECK(std::abs(seq.t - comp.t) <= 1e-14 * comp.t);
        }
    }
    CHECK_THROWS_AS((an::ScalingTransform{0.5, kIsing}.compose({0.5, kMeanField})), DomainError);
}

TEST_CASE("transform on specs") {
    const QuenchSpec base{ModelId::tfic, SystemSize::finite(100), 0.02, 0.01};
    const auto s = an::apply_transform(base, {1.0 / 3.0, kIsing});
    CHECK(s.size.as_int() == 300);
    CHECK(s.g == doctest::Approx(0.01 / 3.0));
    CHECK(s.model == ModelId::tfic);
    CHECK_THROWS_AS(an::apply_transform(base, {0.7, kIsing}), DomainError);  // 100 / 0.7 not integral
    QuenchSpec inf = base;
    inf.size = SystemSize::infinite();
    CHECK_THROWS_AS(an::apply_transform(inf, {0.5, kIsing}), DomainError);
    // QRM sizes are continuous
    const QuenchSpec q{ModelId::qrm, SystemSize::finite(1000), 0.0, 0.01};
    CHECK(an::apply_transform(q, {0.7, kMeanField}).size.value() == doctest::Approx(1000 / 0.7));
}

TEST_CASE("collapse score") {
    SUBCASE("identical traces") {
        const auto a = synthetic(5.0, 301, 1.3);
        const auto rep = an::collapse_score({a, a, a}, {1.0, 1.0, 1.0}, kIsing);
        CHECK(rep.metric == 0.0);
        CHECK(rep.sup_dev == 0.0);
        CHECK(rep.reference_axis.size() == an::kCollapsePoints);
        CHECK(rep.member_curves.size() == 3);
    }
    SUBCASE("single trace") {
        const auto rep = an::collapse_score({synthetic(5.0, 301, 1.3)}, {1.0}, kIsing);
        CHECK(rep.metric == 0.0);
        CHECK(rep.sup_dev == 0.0);
    }
    SUBCASE("exact rescaled family") {
        // L_b(t) = f(t b^z) collapses onto f
        std::vector<EchoTrace> fam;
        const std::vector<double> bs{1.0, 0.5, 0.25};
        for (double b : bs) fam.push_back(synthetic(5.0 / b, 2001, 1.3 * b));
        const auto rep = an::collapse_score(fam, bs, kIsing);
        CHECK(rep.sup_dev <= 1e-4);
        CHECK(rep.metric <= 1e-8);
        const auto wrong = an::collapse_score(fam, bs, CriticalExponents{1.0, 2.0});
        CHECK(wrong.metric > 100 * rep.metric);
    }
    SUBCASE("permutation invariance") {
        std::vector<EchoTrace> fam{synthetic(4.0, 201, 1.0), synthetic(9.0, 301, 0.55, 0.4),
                                   synthetic(14.0, 401, 0.31, 0.2)};
        std::vector<double> bs{1.0, 0.5, 1.0 / 3.0};
        const auto a = an::collapse_score(fam, bs, kIsing);
        std::swap(fam[0], fam[2]);
        std::swap(bs[0], bs[2]);
        const auto b = an::collapse_score(fam, bs, kIsing);
        CHECK(a.metric == doctest::Approx(b.metric).epsilon(1e-12));
        CHECK(a.sup_dev == doctest::Approx(b.sup_dev).epsilon(1e-12));
    }
    SUBCASE("errors") {
        auto late = synthetic(1.0, 11, 1.0);
        for (double& t : late.times) t += 5.0;
        CHECK(test::error_of([&] { an::collapse_score({synthetic(1.0, 11, 1.0), late}, {1.0, 1.0}, kIsing); }) ==
              "disjoint supports");
        CHECK_THROWS_AS(an::collapse_score({}, {}, kIsing), DomainError);
        CHECK_THROWS_AS(an::collapse_score({synthetic(1.0, 11, 1.0)}, {1.0, 2.0}, kIsing), DomainError);
        CHECK_THROWS_AS(an::collapse_score({synthetic(1.0, 11, 1.0)}, {-1.0}, kIsing), DomainError);
    }
}

TEST_CASE("scaling family of a TFIC quench collapses") {
    const QuenchSpec base{ModelId::tfic, SystemSize::finite(100), 0.02, 0.01};
    const std::vector<double> bs{1.0, 0.5, 1.0 / 3.0, 0.25};
    const auto grid = make_time_grid(prepare(base), 2.0, 2001);
    const auto fam = an::scaling_family(base, bs, kIsing, grid);
    REQUIRE(fam.size() == 4);
    CHECK(fam[3].spec.size.as_int() == 400);
    CHECK(fam[3].times.back() == doctest::Approx(grid.t_end() * 4.0));
    const auto rep = an::collapse_score(fam, bs, kIsing);
    CHECK(rep.sup_dev <= 0.02);
    const auto par = an::scaling_family(base, bs, kIsing, grid, Execution{3, Reduction::parallel});
    for (std::size_t j = 0; j < fam.size(); ++j) CHECK(par[j].values == fam[j].values);
}

TEST_CASE("fit kinds") {
    CHECK(an::parse_fit_kind("power_law") == an::FitKind::power_law);
    CHECK(an::parse_fit_kind("power") == an::FitKind::power_law);
    CHECK(an::parse_fit_kind("exp") == an::FitKind::exponential);
    CHECK(an::parse_fit_kind("loglog") == an::FitKind::linear_loglog);
    for (auto k : {an::FitKind::power_law, an::FitKind::exponential, an::FitKind::linear_loglog}) {
        CHECK(an::parse_fit_kind(an::fit_kind_name(k)) == k);
    }
    CHECK_THROWS_AS(an::parse_fit_kind("cubic"), DomainError);
}

TEST_CASE("power-law fit") {
    std::vector<double> xs;
    std::vector<double> ys;
    for (double x = 0.5; x < 20.0; x *= 1.4) {
        xs.push_back(x);
        ys.push_back(3.0 * std::sqrt(x));
    }
    const auto f = an::fit_power_law(xs, ys, {0.0, 100.0});
    CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.point_count == xs.size());
    CHECK(f.kind == an::FitKind::power_law);
    const auto ll = an::fit(an::FitKind::linear_loglog, xs, ys, {0.0, 100.0});
    CHECK(ll.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ll.kind == an::FitKind::linear_loglog);
    // window restricts the points
    const auto w = an::fit_power_law(xs, ys, {1.0, 5.0});
    CHECK(w.point_count < xs.size());
    CHECK(w.point_count >= 3);

    auto bad = ys;
    bad[2] = 0.0;
    CHECK(test::error_of([&] { an::fit_power_law(xs, bad, {0.0, 100.0}); }) == "nonpositive data in fit window");
    CHECK_THROWS_AS(an::fit_power_law(xs, ys, {1.0, 1.5}), DomainError);
    CHECK_THROWS_AS(an::fit_power_law(xs, ys, {2.0, 1.0}), DomainError);
    CHECK_THROWS_AS(an::fit_power_law({1.0, 2.0}, {1.0}, {0.0, 3.0}), DomainError);
}

TEST_CASE("planted exponents survive transform composition") {
    // y = N^{-z} evaluated on sizes generated by chaining transforms
    const an::ScalingTransform step{0.5, kMeanField};
    an::ScalingParams p{250.0, 0.0, 0.04, 1.0};
    std::vector<double> ns;
    std::vector<double> ts;
    for (int i = 0; i < 6; ++i) {
        ns.push_back(p.size);
        ts.push_back(p.t);
        p = an::apply_transform(p, step);
    }
    // t scales as N^{z}, g as N^{-1/nu}
    const auto ft = an::fit_power_law(ns, ts, {1.0, 1e6});
    CHECK(std::abs(ft.slope - 1.0 / 3.0) <= 1e-12);
    std::vector<double> gs;
    p = {250.0, 0.0, 0.04, 1.0};
    for (int i = 0; i < 6; ++i) {
        gs.push_back(p.g);
        p = an::apply_transform(p, step);
    }
    CHECK(std::abs(an::fit_power_law(ns, gs, {1.0, 1e6}).slope + 2.0 / 3.0) <= 1e-12);
}

TEST_CASE("exponential fit") {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<double> flat;
    for (double x = 0.0; x <= 10.0; x += 0.5) {
        xs.push_back(x);
        ys.push_back(std::exp(2.0 - 0.5 * x));
        flat.push_back(0.7);
    }
    const auto f = an::fit_exponential(xs, ys, {-1.0, 11.0});
    CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.kind == an::FitKind::exponential);
    CHECK(std::abs(an::fit_exponential(xs, flat, {-1.0, 11.0}).slope) <= 1e-15);
    auto neg = ys;
    neg[0] = -1.0;
    CHECK_THROWS_AS(an::fit_exponential(xs, neg, {-1.0, 11.0}), DomainError);
    // x may be nonpositive for exponential fits
    CHECK_NOTHROW(an::fit_exponential({-2.0, -1.0, 0.0}, {1.0, 2.0, 4.0}, {-3.0, 1.0}));
}

TEST_CASE("minima sweeps") {
    const auto exps = CriticalExponents::for_model(ModelId::tfic);
    SUBCASE("empty g list") {
        CHECK(an::minima_sweep(ModelId::tfic, {SystemSize::finite(100)}, {}, 0.0, 0.0).empty());
    }
    SUBCASE("order and scaling variable") {
        const auto recs = an::minima_sweep(ModelId::tfic, {SystemSize::finite(100), SystemSize::finite(200)},
                                           {0.01, 0.02}, 0.0, 0.0);
        REQUIRE(recs.size() == 4);
        CHECK(recs[1].minimum.spec.size.as_int() == 100);
        CHECK(recs[1].minimum.spec.g == 0.02);
        CHECK(recs[2].minimum.spec.size.as_int() == 200);
        CHECK(recs[3].scaling_variable == doctest::Approx(4.0));
        for (const auto& r : recs) {
            CHECK(r.minimum.refined);
            CHECK(r.minimum.l_min < 1.0);
        }
    }
    SUBCASE("matched scaling variable gives matched minima") {
        const auto recs = an::minima_sweep_scaled(ModelId::tfic, {SystemSize::finite(100), SystemSize::finite(200)},
                                                  {0.3, 1.0}, 0.0, 0.0);
        CHECK(std::abs(recs[0].minimum.l_min - recs[2].minimum.l_min) <= 1e-3);
        CHECK(std::abs(recs[1].minimum.l_min - recs[3].minimum.l_min) <= 1e-3);
        CHECK(recs[3].scaling_variable == doctest::Approx(1.0));
    }
    SUBCASE("parallel sweep is identical") {
        std::vector<QuenchSpec> specs;
        for (int n : {50, 80, 120}) specs.push_back(QuenchSpec{ModelId::ssh, SystemSize::finite(n), 0.0, 2.0 / n});
        const auto a = an::minima_sweep_points(specs);
        an::SweepOptions opt;
        opt.exec = Execution{3, Reduction::parallel};
        const auto b = an::minima_sweep_points(specs, opt);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].minimum.l_min == b[i].minimum.l_min);
            CHECK(a[i].minimum.t_min == b[i].minimum.t_min);
        }
    }
    SUBCASE("infinite sizes carry an infinite scaling variable") {
        CHECK(std::isinf(an::scaling_variable(QuenchSpec{ModelId::qrm, SystemSize::infinite(), 0.1, 0.1}, exps)));
        CHECK_THROWS_AS(an::minima_sweep_scaled(ModelId::qrm, {SystemSize::infinite()}, {1.0}, 0.1, 0.0),
                        DomainError);
    }
}

TEST_CASE("t_min relation") {
    SUBCASE("closed-form QRM gives rho = z") {
        // t_min = pi / (2 eps_f) with eps_f ~ sqrt(2 g) near criticality; at fixed eta^{2/3} g, rho -> 1/3
        std::vector<an::SweepRecord> recs;
        for (double eta : {1e6, 2e6, 4e6}) {
            const double g = 10.0 * std::pow(eta, -2.0 / 3.0);
            const double eps = std::sqrt(1.0 - std::pow(1.0 - g, 2));
            MinimumRecord m{QuenchSpec{ModelId::qrm, SystemSize::finite(eta), 0.0, g}, std::numbers::pi / (2 * eps), 0.5,
                            true};
            recs.push_back({m, 10.0});
        }
        CHECK(an::tmin_relation_check(recs, kMeanField).rho == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    }
    SUBCASE("TFIC sweep") {
        const auto recs = an::minima_sweep_scaled(ModelId::tfic, {SystemSize::finite(100), SystemSize::finite(200),
                                                                  SystemSize::finite(400)},
                                                  {10.0}, 0.0, 0.0);
        CHECK(std::abs(an::tmin_relation_check(recs, kIsing).rho - 1.0) <= 0.05);
    }
    SUBCASE("errors") {
        const auto recs = an::minima_sweep(ModelId::tfic, {SystemSize::finite(100), SystemSize::finite(200)},
                                           {0.01}, 0.0, 0.0);
        CHECK(test::error_of([&] { an::tmin_relation_check(recs, kIsing); }) ==
              "records do not share the scaling variable");
        CHECK_THROWS_AS(an::tmin_relation_check({recs[0]}, kIsing), DomainError);
    }
}
