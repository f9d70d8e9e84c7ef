// Routes a QuenchSpec to the engine for its model and size.

#pragma once

#include <cstddef>

#include "loschmidt/core.hpp"

namespace loschmidt {

/// Echo evaluator for one spec with any diagonalization already done.
struct PreparedQuench {
    QuenchSpec spec;
    EchoFunction echo;
    double gap = 0.0;  // revival frequency scale; window period is pi / gap
    /// Same quench at doubled Fock truncation (QRM ED only); samples must agree within 1e-8.
    EchoFunction reference{};
};

/// Finite TFIC/SSH -> product formulas; finite LMG -> sector ED; finite QRM -> effective
/// (default) or full ED; infinite LMG/QRM -> closed forms. Infinite TFIC/SSH are rejected.
PreparedQuench prepare(const QuenchSpec& spec);

double gap_estimate(const QuenchSpec& spec);

TimeGrid make_time_grid(const PreparedQuench& prepared, double periods, std::size_t steps);

EchoTrace compute_trace(const QuenchSpec& spec, const TimeGrid& grid, const Execution& exec = {});
EchoTrace compute_trace(const PreparedQuench& prepared, const TimeGrid& grid,
                        const Execution& exec = {});

/// Refined minimum over a window of `periods` revival periods.
MinimumRecord first_minimum(const QuenchSpec& spec, double periods = 1.0, std::size_t steps = 2001);
MinimumRecord first_minimum(const PreparedQuench& prepared, double periods = 1.0,
                            std::size_t steps = 2001);

}  // namespace loschmidt
