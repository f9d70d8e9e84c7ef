#include "loschmidt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "loschmidt/engine.hpp"

namespace loschmidt::analysis {

namespace {

void check_transform(const ScalingTransform& t) {
    if (!(t.b > 0.0) || !std::isfinite(t.b)) throw DomainError("scaling factor b must be positive");
    if (!(t.exponents.nu > 0.0) || !(t.exponents.z > 0.0)) throw DomainError("exponents must be positive");
}

double coupling_factor(const ScalingTransform& t) { return std::pow(t.b, 1.0 / t.exponents.nu); }

}  // namespace

ScalingTransform ScalingTransform::compose(const ScalingTransform& other) const {
    if (!(exponents.nu == other.exponents.nu && exponents.z == other.exponents.z)) {
        throw DomainError("cannot compose transforms with different exponents");
    }
    return ScalingTransform{b * other.b, exponents};
}

ScalingParams apply_transform(const ScalingParams& params, const ScalingTransform& transform) {
    check_transform(transform);
    if (!std::isfinite(params.size)) throw DomainError("scaling transform acts on finite sizes only");
    const double c = coupling_factor(transform);
    return ScalingParams{params.size / transform.b, params.delta_lambda * c, params.g * c,
                         params.t * std::pow(transform.b, -transform.exponents.z)};
}

QuenchSpec apply_transform(const QuenchSpec& spec, const ScalingTransform& transform) {
    check_transform(transform);
    if (spec.size.is_infinite()) throw DomainError("scaling transform acts on finite sizes only");
    const double c = coupling_factor(transform);
    QuenchSpec out = spec;
    double size = spec.size.value() / transform.b;
    if (spec.model != ModelId::qrm) {
        const double r = std::round(size);
        if (std::abs(size - r) > 1e-9 * std::max(1.0, r)) {
            throw DomainError("transformed size " + std::to_string(size) + " is not an integer");
        }
        size = r;
    }
    out.size = SystemSize::finite(size);
    out.delta_lambda = spec.delta_lambda * c;
    out.g = spec.g * c;
    return out;
}

CollapseReport collapse_score(const std::vector<EchoTrace>& traces, const std::vector<double>& b_list,
                              const CriticalExponents& exponents, std::size_t points) {
    if (traces.empty()) throw DomainError("collapse needs at least one trace");
    if (traces.size() != b_list.size()) throw DomainError("one b value per trace required");
    if (points < 2) throw DomainError("collapse axis needs at least 2 points");

    std::vector<std::vector<double>> mapped(traces.size());
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < traces.size(); ++j) {
        const auto& tr = traces[j];
        if (tr.times.size() < 2 || tr.times.size() != tr.values.size()) throw DomainError("malformed trace");
        if (!(b_list[j] > 0.0)) throw DomainError("scaling factor b must be positive");
        const double scale = std::pow(b_list[j], exponents.z);
        mapped[j].reserve(tr.times.size());
        for (double t : tr.times) mapped[j].push_back(t * scale);
        lo = std::max(lo, mapped[j].front());
        hi = std::min(hi, mapped[j].back());
    }
    if (!(hi > lo)) throw DomainError("disjoint supports");

    CollapseReport rep;
    rep.reference_axis.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        rep.reference_axis[i] = i + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    }
    for (std::size_t j = 0; j < traces.size(); ++j) {
        const auto& ts = mapped[j];
        const auto& vs = traces[j].values;
        std::vector<double> curve(points);
        for (std::size_t i = 0; i < points; ++i) {
            const double t = rep.reference_axis[i];
            auto it = std::upper_bound(ts.begin(), ts.end(), t);
            std::size_t k = it == ts.begin() ? 0 : static_cast<std::size_t>(it - ts.begin()) - 1;
            k = std::min(k, ts.size() - 2);
            const double w = (t - ts[k]) / (ts[k + 1] - ts[k]);
            curve[i] = vs[k] + w * (vs[k + 1] - vs[k]);
        }
        rep.member_curves.push_back(std::move(curve));
    }

    const double m = static_cast<double>(traces.size());
    std::vector<double> mean(points, 0.0);
    double spread = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        double s = 0.0;
        double cmin = rep.member_curves[0][i];
        double cmax = cmin;
        for (const auto& c : rep.member_curves) {
            s += c[i];
            cmin = std::min(cmin, c[i]);
            cmax = std::max(cmax, c[i]);
        }
        mean[i] = s / m;
        // identical samples must give exactly zero, whatever the mean rounds to
        if (cmax > cmin) {
            double v = 0.0;
            for (const auto& c : rep.member_curves) v += (c[i] - mean[i]) * (c[i] - mean[i]);
            spread += v / m;
        }
        rep.sup_dev = std::max(rep.sup_dev, cmax - cmin);
    }
    spread /= static_cast<double>(points);
    double grand = 0.0;
    for (double v : mean) grand += v;
    grand /= static_cast<double>(points);
    double var_mean = 0.0;
    for (double v : mean) var_mean += (v - grand) * (v - grand);
    var_mean /= static_cast<double>(points);

    if (spread == 0.0) {
        rep.metric = 0.0;
    } else if (var_mean > 0.0) {
        rep.metric = spread / var_mean;
    } else {
        rep.metric = std::numeric_limits<double>::infinity();
    }
    return rep;
}

std::vector<EchoTrace> scaling_family(const QuenchSpec& base, const std::vector<double>& b_list,
                                      const CriticalExponents& exponents, const TimeGrid& base_grid,
                                      const Execution& exec) {
    std::vector<EchoTrace> out(b_list.size());
    parallel_for(b_list.size(), exec, [&](std::size_t j) {
        const ScalingTransform tr{b_list[j], exponents};
        const QuenchSpec spec = apply_transform(base, tr);
        const double s = std::pow(b_list[j], -exponents.z);
        const TimeGrid grid(base_grid.t_start() * s, base_grid.t_end() * s, base_grid.steps());
        out[j] = compute_trace(spec, grid);
    });
    return out;
}

std::string_view fit_kind_name(FitKind kind) {
    switch (kind) {
        case FitKind::power_law: return "power_law";
        case FitKind::exponential: return "exponential";
        case FitKind::linear_loglog: return "linear_loglog";
    }
    return "unknown";
}

FitKind parse_fit_kind(std::string_view name) {
    if (name == "power_law" || name == "power") return FitKind::power_law;
    if (name == "exponential" || name == "exp") return FitKind::exponential;
    if (name == "linear_loglog" || name == "loglog") return FitKind::linear_loglog;
    throw DomainError("unknown fit kind '" + std::string(name) + "'");
}

namespace {

// Straight-line OLS y = slope x + intercept.
FitResult ols(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit abscissae are all equal");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (r.intercept + r.slope * x[i]);
        ssr += e * e;
    }
    r.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    r.point_count = x.size();
    return r;
}

FitResult windowed(FitKind kind, const std::vector<double>& xs, const std::vector<double>& ys, FitWindow window) {
    if (xs.size() != ys.size()) throw DomainError("xs and ys differ in length");
    if (!(window.lo < window.hi)) throw DomainError("fit window is empty");
    const bool log_x = kind != FitKind::exponential;
    std::vector<double> fx;
    std::vector<double> fy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] >= window.lo && xs[i] <= window.hi)) continue;
        if (!(ys[i] > 0.0) || (log_x && !(xs[i] > 0.0))) throw DomainError("nonpositive data in fit window");
        fx.push_back(log_x ? std::log(xs[i]) : xs[i]);
        fy.push_back(std::log(ys[i]));
    }
    if (fx.size() < 3) throw DomainError("fit needs at least 3 points in the window");
    FitResult r = ols(fx, fy);
    r.kind = kind;
    r.prefactor = std::exp(r.intercept);
    r.window = window;
    return r;
}

}  // namespace

FitResult fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, FitWindow window) {
    return windowed(FitKind::power_law, xs, ys, window);
}

FitResult fit_exponential(const std::vector<double>& xs, const std::vector<double>& ys, FitWindow window) {
    return windowed(FitKind::exponential, xs, ys, window);
}

FitResult fit(FitKind kind, const std::vector<double>& xs, const std::vector<double>& ys, FitWindow window) {
    return windowed(kind, xs, ys, window);
}

double scaling_variable(const QuenchSpec& spec, const CriticalExponents& exponents) {
    if (spec.size.is_infinite()) return std::numeric_limits<double>::infinity();
    return std::pow(spec.size.value(), 1.0 / exponents.nu) * spec.g;
}

std::vector<SweepRecord> minima_sweep_points(const std::vector<QuenchSpec>& specs, const SweepOptions& options) {
    std::vector<SweepRecord> out(specs.size());
    parallel_for(specs.size(), options.exec, [&](std::size_t i) {
        const auto exps = CriticalExponents::for_model(specs[i].model);
        out[i] = SweepRecord{first_minimum(specs[i], options.periods, options.steps), scaling_variable(specs[i], exps)};
    });
    return out;
}

std::vector<SweepRecord> minima_sweep(ModelId model, const std::vector<SystemSize>& sizes,
                                      const std::vector<double>& gs, double delta_lambda, double gamma,
                                      const SweepOptions& options) {
    std::vector<QuenchSpec> specs;
    for (const auto& size : sizes) {
        for (double g : gs) specs.push_back(QuenchSpec{model, size, delta_lambda, g, gamma, options.extra});
    }
    return minima_sweep_points(specs, options);
}

std::vector<SweepRecord> minima_sweep_scaled(ModelId model, const std::vector<SystemSize>& sizes,
                                             const std::vector<double>& scaling_variables, double delta_lambda,
                                             double gamma, const SweepOptions& options) {
    const auto exps = CriticalExponents::for_model(model);
    std::vector<QuenchSpec> specs;
    for (const auto& size : sizes) {
        if (size.is_infinite()) throw DomainError("scaled sweep needs finite sizes");
        const double scale = std::pow(size.value(), -1.0 / exps.nu);
        for (double x : scaling_variables) {
            specs.push_back(QuenchSpec{model, size, delta_lambda, x * scale, gamma, options.extra});
        }
    }
    return minima_sweep_points(specs, options);
}

TminReport tmin_relation_check(const std::vector<SweepRecord>& records, const CriticalExponents& exponents,
                               double tolerance) {
    if (records.size() < 2) throw DomainError("t_min relation needs at least 2 records");
    const double ref = scaling_variable(records.front().minimum.spec, exponents);
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto& r : records) {
        if (r.minimum.spec.size.is_infinite()) throw DomainError("t_min relation needs finite sizes");
        const double sv = scaling_variable(r.minimum.spec, exponents);
        if (std::abs(sv - ref) > tolerance * std::max(std::abs(ref), 1e-300)) {
            throw DomainError("records do not share the scaling variable");
        }
        if (!(r.minimum.t_min > 0.0)) throw DomainError("t_min must be positive");
        lx.push_back(std::log(r.minimum.spec.size.value()));
        ly.push_back(std::log(r.minimum.t_min));
    }
    FitResult f = ols(lx, ly);
    f.kind = FitKind::power_law;
    f.prefactor = std::exp(f.intercept);
    f.window = FitWindow{std::exp(*std::min_element(lx.begin(), lx.end())),
                         std::exp(*std::max_element(lx.begin(), lx.end()))};
    return TminReport{f.slope, f};
}

}  // namespace loschmidt::analysis
