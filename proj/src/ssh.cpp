#include "loschmidt/ssh.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace loschmidt::ssh {

namespace {

constexpr double kAxisTolerance = 1e-12;  // |sin k| below this counts as k in {0, pi}

void check_cells(int n_cells) {
    if (n_cells < 4 || n_cells % 2 != 0) {
        throw DomainError("SSH needs an even cell count >= 4, got " + std::to_string(n_cells));
    }
}

void check_hoppings(double lambda_i, double lambda_f) {
    if (!(lambda_i > 0.0) || !(lambda_f > 0.0)) throw DomainError("SSH needs lambda_i, lambda_f > 0");
}

QuenchSpec lambda_spec(int n_cells, double lambda_i, double lambda_f) {
    // g may be negative here (quench towards the topological side); kept for provenance only.
    return QuenchSpec{ModelId::ssh, SystemSize::finite(n_cells), 1.0 - lambda_i, lambda_i - lambda_f};
}

}  // namespace

double band_energy(double lambda, double k) {
    return std::sqrt(std::max(0.0, 1.0 + lambda * lambda + 2.0 * lambda * std::cos(k)));
}

std::vector<double> momentum_grid(int n_cells) {
    check_cells(n_cells);
    std::vector<double> ks;
    ks.reserve(static_cast<std::size_t>(n_cells));
    for (int m = -n_cells / 2; m < n_cells / 2; ++m) ks.push_back(2.0 * std::numbers::pi * m / n_cells);
    return ks;
}

double SshMode::factor(double t) const {
    if (overlap * overlap == 1.0) return 1.0;
    const double c = std::cos(e_f * t);
    const double s = std::sin(e_f * t);
    return c * c + s * s * overlap * overlap;
}

SshMode make_mode(double lambda_i, double lambda_f, double k) {
    const double e_i = band_energy(lambda_i, k);
    const double e_f = band_energy(lambda_f, k);
    const double ck = std::cos(k);
    const double sk = std::sin(k);
    double overlap = 0.0;
    if (std::abs(sk) < kAxisTolerance) {
        // d vectors are collinear on the k_x axis; also covers E = 0 at the gap closing
        const double p = (1.0 + lambda_i * ck) * (1.0 + lambda_f * ck);
        overlap = p < 0.0 ? -1.0 : 1.0;
    } else {
        overlap = ((1.0 + lambda_i * ck) * (1.0 + lambda_f * ck) + lambda_i * lambda_f * sk * sk) / (e_i * e_f);
    }
    return SshMode{k, e_i, e_f, overlap};
}

ProductEcho::ProductEcho(int n_cells, double lambda_i, double lambda_f) : log_accumulate_(n_cells > 1000) {
    check_hoppings(lambda_i, lambda_f);
    for (double k : momentum_grid(n_cells)) modes_.push_back(make_mode(lambda_i, lambda_f, k));
}

double ProductEcho::operator()(double t) const {
    if (log_accumulate_) {
        double acc = 0.0;
        for (const auto& m : modes_) acc += std::log(m.factor(t));
        return std::exp(acc);
    }
    double prod = 1.0;
    for (const auto& m : modes_) prod *= m.factor(t);
    return prod;
}

double ProductEcho::gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (const auto& m : modes_) {
        if (std::abs(std::sin(m.k)) >= kAxisTolerance) g = std::min(g, m.e_f);
    }
    return g;
}

EchoTrace echo_trace(int n_cells, double delta_lambda, double g, const TimeGrid& grid, const Execution& exec) {
    QuenchSpec spec{ModelId::ssh, SystemSize::finite(n_cells), delta_lambda, g};
    spec.validate();
    auto trace = echo_trace_lambdas(n_cells, spec.lambda_i(), spec.lambda_f(), grid, exec);
    trace.spec = spec;
    return trace;
}

EchoTrace echo_trace_lambdas(int n_cells, double lambda_i, double lambda_f, const TimeGrid& grid,
                             const Execution& exec) {
    check_hoppings(lambda_i, lambda_f);
    const ProductEcho echo(n_cells, lambda_i, lambda_f);
    return make_trace(lambda_spec(n_cells, lambda_i, lambda_f), [&](double t) { return echo(t); }, grid, exec);
}

Eigen::Matrix2cd bloch_hamiltonian(double lambda, double k) {
    using C = std::complex<double>;
    const C off = 1.0 + lambda * std::exp(C(0.0, -k));
    Eigen::Matrix2cd h;
    h << C(0.0), off, std::conj(off), C(0.0);
    return h;
}

std::complex<double> oracle_amplitude(double lambda_i, double lambda_f, double k, double t) {
    using C = std::complex<double>;
    const Eigen::Matrix2cd hi = bloch_hamiltonian(lambda_i, k);
    Eigen::Vector2cd u;
    if (hi.cwiseAbs().maxCoeff() < 1e-14) {
        u << C(1.0 / std::numbers::sqrt2), C(-1.0 / std::numbers::sqrt2);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> si(hi);
        u = si.eigenvectors().col(0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> sf(bloch_hamiltonian(lambda_f, k));
    C amp(0.0);
    for (int n = 0; n < 2; ++n) {
        const C proj = sf.eigenvectors().col(n).dot(u);
        amp += std::norm(proj) * std::exp(C(0.0, -sf.eigenvalues()(n) * t));
    }
    return amp;
}

EchoTrace oracle_echo_lambdas(int n_cells, double lambda_i, double lambda_f, const TimeGrid& grid) {
    const auto ks = momentum_grid(n_cells);
    EchoTrace trace{lambda_spec(n_cells, lambda_i, lambda_f), grid.times(), {}};
    trace.values.reserve(trace.times.size());
    for (double t : trace.times) {
        double prod = 1.0;
        for (double k : ks) prod *= std::norm(oracle_amplitude(lambda_i, lambda_f, k, t));
        trace.values.push_back(prod);
    }
    return trace;
}

EchoTrace oracle_echo(int n_cells, double delta_lambda, double g, const TimeGrid& grid) {
    QuenchSpec spec{ModelId::ssh, SystemSize::finite(n_cells), delta_lambda, g};
    spec.validate();
    auto trace = oracle_echo_lambdas(n_cells, spec.lambda_i(), spec.lambda_f(), grid);
    trace.spec = spec;
    return trace;
}

}  // namespace loschmidt::ssh
