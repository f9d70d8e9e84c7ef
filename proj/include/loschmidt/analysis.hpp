// Scaling transformations, collapse scoring, minima sweeps and exponent fits.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "loschmidt/core.hpp"

namespace loschmidt::analysis {

/// (N, dl, g, t) -> (N / b, dl b^{1/nu}, g b^{1/nu}, t b^{-z}).
struct ScalingTransform {
    double b = 1.0;
    CriticalExponents exponents{};

    /// T(b1) o T(b2) = T(b1 b2); exponents must agree.
    ScalingTransform compose(const ScalingTransform& other) const;
};

struct ScalingParams {
    double size;
    double delta_lambda;
    double g;
    double t;
};

ScalingParams apply_transform(const ScalingParams& params, const ScalingTransform& transform);
/// Transforms size and couplings of a finite spec. Integer-sized models get the nearest
/// integer size, which must be within 1e-9 of N / b.
QuenchSpec apply_transform(const QuenchSpec& spec, const ScalingTransform& transform);

struct CollapseReport {
    std::vector<double> reference_axis;
    std::vector<std::vector<double>> member_curves;
    double metric = 0.0;   // mean over the axis of the across-curve variance / variance of the mean curve
    double sup_dev = 0.0;  // max pairwise pointwise gap
};

inline constexpr std::size_t kCollapsePoints = 512;

/// traces[j] was computed at parameters transformed with b_list[j]; member times t' map back to
/// the reference axis as t' * b^z.
CollapseReport collapse_score(const std::vector<EchoTrace>& traces, const std::vector<double>& b_list,
                              const CriticalExponents& exponents, std::size_t points = kCollapsePoints);

/// Traces of the scaling family of `base`: one per b, each on the base window mapped by b^{-z}.
std::vector<EchoTrace> scaling_family(const QuenchSpec& base, const std::vector<double>& b_list,
                                      const CriticalExponents& exponents, const TimeGrid& base_grid,
                                      const Execution& exec = {});

enum class FitKind { power_law, exponential, linear_loglog };

std::string_view fit_kind_name(FitKind kind);
FitKind parse_fit_kind(std::string_view name);

struct FitWindow {
    double lo;
    double hi;
};

struct FitResult {
    FitKind kind = FitKind::power_law;
    double slope = 0.0;      // exponent for power laws
    double intercept = 0.0;  // of the straight-line fit in transformed coordinates
    double prefactor = 0.0;  // e^intercept for power laws, e^intercept for exponentials
    double r_squared = 0.0;
    FitWindow window{0.0, 0.0};
    std::size_t point_count = 0;
};

/// Ordinary least squares of ln y on ln x over points with x in the window.
FitResult fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, FitWindow window);
/// Ordinary least squares of ln y on x.
FitResult fit_exponential(const std::vector<double>& xs, const std::vector<double>& ys, FitWindow window);
FitResult fit(FitKind kind, const std::vector<double>& xs, const std::vector<double>& ys, FitWindow window);

struct SweepRecord {
    MinimumRecord minimum;
    double scaling_variable;  // N^{1/nu} g
};

struct SweepOptions {
    double periods = 1.0;
    std::size_t steps = 2001;
    Execution exec{};
    QuenchExtras extra{};
};

/// One refined minimum per spec, in input order; points run on the options' worker pool.
std::vector<SweepRecord> minima_sweep_points(const std::vector<QuenchSpec>& specs,
                                             const SweepOptions& options = {});

/// One refined minimum per (size, g) pair, sizes outermost.
std::vector<SweepRecord> minima_sweep(ModelId model, const std::vector<SystemSize>& sizes,
                                      const std::vector<double>& gs, double delta_lambda, double gamma,
                                      const SweepOptions& options = {});

/// Same, with g = x N^{-1/nu} for every scaling-variable value x.
std::vector<SweepRecord> minima_sweep_scaled(ModelId model, const std::vector<SystemSize>& sizes,
                                             const std::vector<double>& scaling_variables,
                                             double delta_lambda, double gamma,
                                             const SweepOptions& options = {});

struct TminReport {
    double rho;  // t_min ~ N^rho
    FitResult fit;
};

/// Records must share the scaling variable N^{1/nu} g (relative tolerance `tolerance`).
TminReport tmin_relation_check(const std::vector<SweepRecord>& records, const CriticalExponents& exponents,
                               double tolerance = 1e-9);

/// N^{1/nu} g; +infinity for the infinite-size sentinel.
double scaling_variable(const QuenchSpec& spec, const CriticalExponents& exponents);

}  // namespace loschmidt::analysis
