// Domain types shared by the echo engines and the scaling toolkit.
//
// Conventions: the control parameter has its critical point at lambda_c = 1,
// the initial coupling is lambda_i = 1 - delta_lambda and the post-quench
// coupling is lambda_f = lambda_i - g. All energies are in units of the
// model's coupling J (TFIC, LMG, SSH) or boson frequency (QRM).

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace loschmidt {

/// Invalid parameters or preconditions supplied by the caller.
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to meet its own accuracy contract.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ModelId { tfic, lmg, qrm, ssh };

std::string_view model_name(ModelId model);
ModelId parse_model(std::string_view name);

/// Spin count (TFIC, LMG), unit-cell count (SSH) or frequency ratio eta (QRM).
/// The infinite sentinel routes to closed-form engines; it is never a large-N stand-in.
class SystemSize {
  public:
    static SystemSize finite(double value);
    static SystemSize infinite() { return SystemSize{}; }

    bool is_infinite() const { return infinite_; }
    /// Throws DomainError for the infinite sentinel.
    double value() const;
    /// Integer size; throws unless finite and integral.
    int as_int() const;

    friend bool operator==(const SystemSize&, const SystemSize&) = default;

  private:
    SystemSize() = default;
    double value_ = 0.0;
    bool infinite_ = true;
};

enum class Parity { even, odd };
enum class QrmEngine { effective, full };

struct QuenchExtras {
    std::optional<int> n_max;            // QRM Fock truncation; engine default when empty
    Parity sector = Parity::even;        // TFIC fermion-parity sector
    QrmEngine qrm_engine = QrmEngine::effective;

    friend bool operator==(const QuenchExtras&, const QuenchExtras&) = default;
};

struct QuenchSpec {
    ModelId model = ModelId::tfic;
    SystemSize size = SystemSize::infinite();
    double delta_lambda = 0.0;
    double g = 0.0;
    double gamma = 0.0;
    QuenchExtras extra{};

    double lambda_i() const { return 1.0 - delta_lambda; }
    double lambda_f() const { return lambda_i() - g; }

    /// Checks the spec invariants; throws DomainError with a descriptive message.
    void validate() const;

    friend bool operator==(const QuenchSpec&, const QuenchSpec&) = default;
};

/// Uniform grid, endpoints inclusive.
class TimeGrid {
  public:
    TimeGrid(double t_start, double t_end, std::size_t steps);

    double t_start() const { return t_start_; }
    double t_end() const { return t_end_; }
    std::size_t steps() const { return steps_; }
    double spacing() const { return (t_end_ - t_start_) / static_cast<double>(steps_ - 1); }
    double at(std::size_t i) const;
    std::vector<double> times() const;

  private:
    double t_start_;
    double t_end_;
    std::size_t steps_;
};

struct EchoTrace {
    QuenchSpec spec;
    std::vector<double> times;
    std::vector<double> values;
};

struct CriticalExponents {
    double nu = 1.0;
    double z = 1.0;

    static CriticalExponents for_model(ModelId model);
};

struct MinimumRecord {
    QuenchSpec spec;
    double t_min = 0.0;
    double l_min = 1.0;
    bool refined = false;
};

enum class Reduction { sequential, parallel };

/// Worker-pool width and reduction mode; carried explicitly, there is no global state.
struct Execution {
    unsigned jobs = 1;
    Reduction reduction = Reduction::sequential;

    unsigned workers() const { return reduction == Reduction::sequential ? 1U : (jobs == 0 ? 1U : jobs); }
};

/// Calls fn(i) for i in [0, n). Each index is processed by exactly one worker, so
/// results written per index are independent of the worker count.
template <class Fn>
void parallel_for(std::size_t n, const Execution& exec, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(exec.workers(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

using EchoFunction = std::function<double(double)>;

/// Samples fn on every grid point.
std::vector<double> sample(const EchoFunction& fn, const TimeGrid& grid, const Execution& exec = {});
EchoTrace make_trace(const QuenchSpec& spec, const EchoFunction& fn, const TimeGrid& grid,
                     const Execution& exec = {});

/// Window [0, periods * pi / gap] where gap is the post-quench gap estimate of the spec.
/// Throws DomainError("divergent period") when the gap closes at infinite size.
TimeGrid make_time_grid(const QuenchSpec& spec, double periods, std::size_t steps);
TimeGrid make_time_grid_from_gap(double gap, double periods, std::size_t steps);

/// Golden-section refinement of the grid minimum of fn. Throws DomainError
/// ("minimum not bracketed") when the grid minimum sits on an endpoint.
MinimumRecord refine_first_minimum(const EchoFunction& fn, const TimeGrid& grid,
                                   const QuenchSpec& spec = {});
MinimumRecord refine_first_minimum(const EchoFunction& fn, const std::vector<double>& sampled,
                                   const TimeGrid& grid, const QuenchSpec& spec = {});

/// (1 - L(h)) / h^2, which tends to the initial-state energy variance under H(lambda_f).
double short_time_coefficient(const EchoFunction& fn, double h);

}  // namespace loschmidt
