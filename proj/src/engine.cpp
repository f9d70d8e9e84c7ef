#include "loschmidt/engine.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "loschmidt/lmg.hpp"
#include "loschmidt/qrm.hpp"
#include "loschmidt/ssh.hpp"
#include "loschmidt/tfic.hpp"

namespace loschmidt {

namespace {

template <class T>
EchoFunction share(std::shared_ptr<const T> obj) {
    return [obj](double t) { return (*obj)(t); };
}

void require_finite(const QuenchSpec& spec) {
    if (spec.size.is_infinite()) {
        throw DomainError(std::string(model_name(spec.model)) + " has no closed form at infinite size");
    }
}

PreparedQuench prepare_qrm_ed(const QuenchSpec& spec) {
    const double eta = spec.size.value();
    const double li = spec.lambda_i();
    const double lf = spec.lambda_f();
    const bool full = spec.extra.qrm_engine == QrmEngine::full;
    int n_max = spec.extra.n_max.value_or(0);
    if (n_max <= 0) n_max = full ? qrm::default_full_n_max(eta) : qrm::default_effective_n_max(li, eta);
    const auto build = [&](int n) {
        return std::make_shared<const qrm::EdEcho>(full ? qrm::prepare_full(li, lf, eta, n)
                                                        : qrm::prepare_effective(li, lf, eta, n));
    };
    auto coarse = build(n_max);
    auto fine = build(2 * n_max);
    return PreparedQuench{spec, share(coarse), coarse->gap(), share(fine)};
}

}  // namespace

PreparedQuench prepare(const QuenchSpec& spec) {
    spec.validate();
    const double li = spec.lambda_i();
    const double lf = spec.lambda_f();
    switch (spec.model) {
        case ModelId::tfic: {
            require_finite(spec);
            auto echo = std::make_shared<const tfic::ProductEcho>(spec.size.as_int(), li, lf);
            return PreparedQuench{spec, share(echo), echo->gap()};
        }
        case ModelId::ssh: {
            require_finite(spec);
            if (!(lf > 0.0)) throw DomainError("SSH needs lambda_f > 0");
            auto echo = std::make_shared<const ssh::ProductEcho>(spec.size.as_int(), li, lf);
            return PreparedQuench{spec, share(echo), echo->gap()};
        }
        case ModelId::lmg: {
            if (spec.size.is_infinite()) {
                if (lf == 1.0) throw DomainError("divergent period");
                const auto p = lmg::squeeze_params(li, lf, spec.gamma);
                const double gamma = spec.gamma;
                return PreparedQuench{spec, [li, lf, gamma](double t) { return lmg::echo_analytic(li, lf, gamma, t); },
                                      p.eps_f};
            }
            auto echo = std::make_shared<const lmg::SectorEcho>(spec.size.as_int(), li, lf, spec.gamma);
            return PreparedQuench{spec, share(echo), echo->gap()};
        }
        case ModelId::qrm: {
            if (spec.size.is_infinite()) {
                if (std::abs(lf) == 1.0) throw DomainError("divergent period");
                const auto p = qrm::analytic_params(li, lf);
                return PreparedQuench{spec, [li, lf](double t) { return qrm::echo_analytic_lambdas(li, lf, t); },
                                      p.eps_f};
            }
            return prepare_qrm_ed(spec);
        }
    }
    throw DomainError("unknown model");
}

double gap_estimate(const QuenchSpec& spec) { return prepare(spec).gap; }

TimeGrid make_time_grid(const QuenchSpec& spec, double periods, std::size_t steps) {
    return make_time_grid_from_gap(gap_estimate(spec), periods, steps);
}

TimeGrid make_time_grid(const PreparedQuench& prepared, double periods, std::size_t steps) {
    return make_time_grid_from_gap(prepared.gap, periods, steps);
}

namespace {

void check_reference(const PreparedQuench& prepared, const std::vector<double>& times,
                     const std::vector<double>& values, const Execution& exec) {
    if (!prepared.reference) return;
    std::vector<double> ref(times.size());
    parallel_for(times.size(), exec, [&](std::size_t i) { ref[i] = prepared.reference(times[i]); });
    for (std::size_t i = 0; i < ref.size(); ++i) {
        if (std::abs(ref[i] - values[i]) > qrm::kTruncationTolerance) throw NumericalError("unconverged truncation");
    }
}

}  // namespace

EchoTrace compute_trace(const PreparedQuench& prepared, const TimeGrid& grid, const Execution& exec) {
    EchoTrace trace = make_trace(prepared.spec, prepared.echo, grid, exec);
    check_reference(prepared, trace.times, trace.values, exec);
    return trace;
}

EchoTrace compute_trace(const QuenchSpec& spec, const TimeGrid& grid, const Execution& exec) {
    return compute_trace(prepare(spec), grid, exec);
}

MinimumRecord first_minimum(const PreparedQuench& prepared, double periods, std::size_t steps) {
    const TimeGrid grid = make_time_grid(prepared, periods, steps);
    const EchoTrace trace = compute_trace(prepared, grid);
    MinimumRecord rec = refine_first_minimum(prepared.echo, trace.values, grid, prepared.spec);
    check_reference(prepared, {rec.t_min}, {rec.l_min}, {});
    return rec;
}

MinimumRecord first_minimum(const QuenchSpec& spec, double periods, std::size_t steps) {
    return first_minimum(prepare(spec), periods, steps);
}

}  // namespace loschmidt
