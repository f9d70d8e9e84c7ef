#include "loschmidt/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace loschmidt {

std::string_view model_name(ModelId model) {
    switch (model) {
        case ModelId::tfic: return "tfic";
        case ModelId::lmg: return "lmg";
        case ModelId::qrm: return "qrm";
        case ModelId::ssh: return "ssh";
    }
    return "unknown";
}

ModelId parse_model(std::string_view name) {
    if (name == "tfic") return ModelId::tfic;
    if (name == "lmg") return ModelId::lmg;
    if (name == "qrm") return ModelId::qrm;
    if (name == "ssh") return ModelId::ssh;
    throw DomainError("unknown model '" + std::string(name) + "' (expected tfic|lmg|qrm|ssh)");
}

SystemSize SystemSize::finite(double value) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw DomainError("system size must be positive and finite");
    }
    SystemSize s;
    s.value_ = value;
    s.infinite_ = false;
    return s;
}

double SystemSize::value() const {
    if (infinite_) throw DomainError("infinite size has no numeric value");
    return value_;
}

int SystemSize::as_int() const {
    const double v = value();
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v)) || r > 1e9) {
        throw DomainError("system size must be an integer, got " + std::to_string(v));
    }
    return static_cast<int>(r);
}

void QuenchSpec::validate() const {
    const double li = lambda_i();
    const double lf = lambda_f();
    if (!std::isfinite(delta_lambda) || !std::isfinite(g) || !std::isfinite(gamma)) {
        throw DomainError("quench parameters must be finite");
    }
    if (delta_lambda < 0.0) throw DomainError("delta_lambda must be >= 0");
    if (g < 0.0) throw DomainError("g must be >= 0");
    if (!(li > 0.0 && li <= 1.0)) throw DomainError("lambda_i = 1 - delta_lambda must lie in (0, 1]");
    if (!(lf > -1.0)) throw DomainError("lambda_f = lambda_i - g must exceed -1");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in [0, 1)");
    if (model != ModelId::qrm && !size.is_infinite()) {
        const int n = size.as_int();
        if (n < 4 || n % 2 != 0) throw DomainError("size must be an even integer >= 4");
    }
    if (extra.n_max && *extra.n_max < 1) throw DomainError("n_max must be positive");
}

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t steps)
    : t_start_(t_start), t_end_(t_end), steps_(steps) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end)) throw DomainError("time grid bounds must be finite");
    if (t_start < 0.0) throw DomainError("t_start must be >= 0");
    if (!(t_end > t_start)) throw DomainError("t_end must exceed t_start");
    if (steps < 2) throw DomainError("time grid needs at least 2 steps");
}

double TimeGrid::at(std::size_t i) const {
    if (i + 1 == steps_) return t_end_;
    return t_start_ + spacing() * static_cast<double>(i);
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(steps_);
    for (std::size_t i = 0; i < steps_; ++i) out[i] = at(i);
    return out;
}

CriticalExponents CriticalExponents::for_model(ModelId model) {
    switch (model) {
        case ModelId::tfic:
        case ModelId::ssh: return {1.0, 1.0};
        case ModelId::lmg:
        case ModelId::qrm: return {1.5, 1.0 / 3.0};
    }
    return {};
}

std::vector<double> sample(const EchoFunction& fn, const TimeGrid& grid, const Execution& exec) {
    std::vector<double> values(grid.steps());
    parallel_for(grid.steps(), exec, [&](std::size_t i) { values[i] = fn(grid.at(i)); });
    return values;
}

EchoTrace make_trace(const QuenchSpec& spec, const EchoFunction& fn, const TimeGrid& grid,
                     const Execution& exec) {
    return EchoTrace{spec, grid.times(), sample(fn, grid, exec)};
}

TimeGrid make_time_grid_from_gap(double gap, double periods, std::size_t steps) {
    if (!(periods > 0.0)) throw DomainError("periods must be positive");
    if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("divergent period");
    return TimeGrid(0.0, periods * std::numbers::pi / gap, steps);
}

MinimumRecord refine_first_minimum(const EchoFunction& fn, const TimeGrid& grid, const QuenchSpec& spec) {
    return refine_first_minimum(fn, sample(fn, grid), grid, spec);
}

MinimumRecord refine_first_minimum(const EchoFunction& fn, const std::vector<double>& sampled,
                                   const TimeGrid& grid, const QuenchSpec& spec) {
    if (sampled.size() != grid.steps()) throw DomainError("sample count does not match grid");
    const auto it = std::min_element(sampled.begin(), sampled.end());
    const auto idx = static_cast<std::size_t>(it - sampled.begin());
    // Strict interior: a flat trace has its first minimum at index 0.
    if (idx == 0 || idx + 1 == sampled.size() || !(sampled[idx] < sampled.front())) {
        throw DomainError("minimum not bracketed");
    }

    double a = grid.at(idx - 1);
    double b = grid.at(idx + 1);
    const double tol = 1e-10 * grid.t_end();
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    double t_best = 0.5 * (a + b);
    double l_best = fn(t_best);
    for (auto [t, l] : {std::pair{c, fc}, std::pair{d, fd}, std::pair{grid.at(idx), sampled[idx]}}) {
        if (l < l_best) {
            l_best = l;
            t_best = t;
        }
    }
    return MinimumRecord{spec, t_best, l_best, true};
}

double short_time_coefficient(const EchoFunction& fn, double h) {
    if (!(h > 0.0)) throw DomainError("h must be positive");
    return (1.0 - fn(h)) / (h * h);
}

}  // namespace loschmidt
