#include <algorithm>
#include <cmath>

#include "loschmidt/cli.hpp"
#include "loschmidt/engine.hpp"
#include "loschmidt/lmg.hpp"
#include "loschmidt/qrm.hpp"
#include "loschmidt/ssh.hpp"
#include "loschmidt/tfic.hpp"

namespace loschmidt::cli {

namespace {

constexpr double kDeltaLambda = 0.1;
constexpr double kQuench = 0.1;
constexpr std::size_t kSteps = 401;

double max_dev(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

OracleRow check(ModelId model, int size) {
    QuenchSpec spec{model, SystemSize::finite(size), kDeltaLambda, kQuench};
    switch (model) {
        case ModelId::tfic: {
            if (size > tfic::kOracleMaxSpins) throw DomainError("oracle size cap");
            const auto prepared = prepare(spec);
            const auto grid = make_time_grid(prepared, 2.0, kSteps);
            const auto fast = compute_trace(prepared, grid);
            const auto brute = tfic::brute_force_echo(size, kDeltaLambda, kQuench, grid);
            return {"tfic", size, max_dev(fast.values, brute.values), 1e-8};
        }
        case ModelId::lmg: {
            if (size > lmg::kOracleMaxSpins) throw DomainError("oracle size cap");
            const auto prepared = prepare(spec);
            const auto grid = make_time_grid(prepared, 2.0, kSteps);
            const auto fast = compute_trace(prepared, grid);
            const auto brute = lmg::brute_force_echo(size, kDeltaLambda, kQuench, 0.0, grid);
            return {"lmg", size, max_dev(fast.values, brute.values), 1e-8};
        }
        case ModelId::ssh: {
            const auto prepared = prepare(spec);
            const auto grid = make_time_grid(prepared, 2.0, kSteps);
            const auto fast = compute_trace(prepared, grid);
            const auto ref = ssh::oracle_echo(size, kDeltaLambda, kQuench, grid);
            return {"ssh", size, max_dev(fast.values, ref.values), 1e-12};
        }
        case ModelId::qrm: {
            // Effective ED at large eta against the eta -> infinity closed form.
            constexpr double eta = 1e6;
            QuenchSpec q{ModelId::qrm, SystemSize::finite(eta), 0.2, 0.2};
            const auto prepared = prepare(q);
            const auto grid = make_time_grid(prepared, 2.0, kSteps);
            const auto ed = compute_trace(prepared, grid);
            std::vector<double> exact;
            for (double t : grid.times()) exact.push_back(qrm::echo_analytic(0.2, 0.2, t));
            return {"qrm", static_cast<int>(eta), max_dev(ed.values, exact), 1e-3};
        }
    }
    throw DomainError("unknown model");
}

}  // namespace

std::vector<OracleRow> run_oracles(const std::vector<ModelId>& models, int size) {
    std::vector<OracleRow> rows;
    for (ModelId m : models) rows.push_back(check(m, size));
    return rows;
}

}  // namespace loschmidt::cli
