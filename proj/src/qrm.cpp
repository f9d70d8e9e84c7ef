#include "loschmidt/qrm.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace loschmidt::qrm {

namespace {

void check_normal(double lambda) {
    if (!(std::abs(lambda) < 1.0)) throw DomainError("superradiant side has no analytic echo (need |lambda| < 1)");
}

void check_eta(double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("eta must be positive and finite");
}

// a + a^dag on Fock states 0..dim-1.
Eigen::MatrixXd position(Eigen::Index dim) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index n = 0; n + 1 < dim; ++n) x(n, n + 1) = x(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
    return x;
}

}  // namespace

double gap_normal(double lambda) {
    check_normal(lambda);
    return std::sqrt(1.0 - lambda * lambda);
}

double squeezing_normal(double lambda) {
    check_normal(lambda);
    return -0.25 * std::log(1.0 - lambda * lambda);
}

QrmAnalytic analytic_params(double lambda_i, double lambda_f) {
    return QrmAnalytic{squeezing_normal(lambda_i) - squeezing_normal(lambda_f), gap_normal(lambda_f)};
}

double echo_analytic_lambdas(double lambda_i, double lambda_f, double t) {
    const auto p = analytic_params(lambda_i, lambda_f);
    // |c^2 - e^{2i t eps} s^2|^2 = 1 + sinh^2(2 z0) sin^2(t eps); exact 1 at t = 0
    const double a = std::sinh(2.0 * p.z0) * std::sin(t * p.eps_f);
    return 1.0 / std::sqrt(1.0 + a * a);
}

double echo_analytic(double delta_lambda, double g, double t) {
    return echo_analytic_lambdas(1.0 - delta_lambda, 1.0 - delta_lambda - g, t);
}

FidelityBound fidelity_bound(double delta_lambda, double g) {
    const auto p = analytic_params(1.0 - delta_lambda, 1.0 - delta_lambda - g);
    const double f = 1.0 / std::sqrt(std::cosh(p.z0));
    return FidelityBound{f, 1.0 / (2.0 * std::pow(f, -4.0) - 1.0)};
}

double lmin_analytic(double delta_lambda, double g) {
    const auto p = analytic_params(1.0 - delta_lambda, 1.0 - delta_lambda - g);
    return 2.0 / (std::exp(2.0 * p.z0) + std::exp(-2.0 * p.z0));
}

double solve_squeezing_cubic(double lambda_i, double eta) {
    if (!(lambda_i > 0.0 && lambda_i <= 1.0)) throw DomainError("lambda_i must lie in (0, 1]");
    check_eta(eta);
    const double l4 = std::pow(lambda_i, 4);
    const double a = 1.5 * l4 / eta;
    const double b = (1.0 - lambda_i) * (1.0 + lambda_i);
    const auto f = [&](double xi) { return (a * xi + b) * xi * xi - 1.0; };
    const auto df = [&](double xi) { return (3.0 * a * xi + 2.0 * b) * xi; };

    // Both guesses bound the root from above; take the larger finite one.
    double guess = 0.0;
    if (b > 0.0) guess = std::max(guess, 1.0 / std::sqrt(b));
    if (a > 0.0) guess = std::max(guess, std::cbrt(2.0 * eta / (3.0 * l4)));
    double lo = 0.0;
    double hi = guess;
    double xi = guess;
    for (int it = 0; it < 200; ++it) {
        const double fx = f(xi);
        if (fx > 0.0) hi = std::min(hi, xi); else lo = std::max(lo, xi);
        if (std::abs(fx) <= 1e-14) break;
        double next = xi - fx / df(xi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == xi) break;
        xi = next;
    }
    if (!(std::abs(f(xi)) <= 1e-12)) throw NumericalError("squeezing cubic did not converge");
    return xi;
}

Eigen::MatrixXd effective_hamiltonian(double lambda, double eta, int n_max) {
    check_eta(eta);
    if (n_max < 1) throw DomainError("n_max must be positive");
    const Eigen::Index keep = n_max + 1;
    const Eigen::Index pad = keep + 4;  // X^4 reaches four levels up
    const Eigen::MatrixXd x = position(pad);
    const Eigen::MatrixXd x2 = x * x;
    const Eigen::MatrixXd x4 = x2 * x2;
    Eigen::MatrixXd h = -(lambda * lambda / 4.0) * x2 + (std::pow(lambda, 4) / (16.0 * eta)) * x4;
    for (Eigen::Index n = 0; n < pad; ++n) h(n, n) += static_cast<double>(n);
    return h.topLeftCorner(keep, keep);
}

Eigen::MatrixXd full_hamiltonian(double lambda, double eta, int n_max) {
    check_eta(eta);
    if (n_max < 1) throw DomainError("n_max must be positive");
    const Eigen::Index dim = 2 * (static_cast<Eigen::Index>(n_max) + 1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const double coupling = 0.5 * lambda * std::sqrt(eta);
    for (Eigen::Index n = 0; n <= n_max; ++n) {
        h(2 * n, 2 * n) = static_cast<double>(n) - 0.5 * eta;
        h(2 * n + 1, 2 * n + 1) = static_cast<double>(n) + 0.5 * eta;
        if (n < n_max) {
            const double amp = coupling * std::sqrt(static_cast<double>(n + 1));
            // s_x flips the spin while a + a^dag moves one boson
            h(2 * n, 2 * (n + 1) + 1) = h(2 * (n + 1) + 1, 2 * n) = amp;
            h(2 * n + 1, 2 * (n + 1)) = h(2 * (n + 1), 2 * n + 1) = amp;
        }
    }
    return h;
}

int default_effective_n_max(double lambda_i, double eta) {
    return std::max(128, static_cast<int>(std::ceil(20.0 * solve_squeezing_cubic(lambda_i, eta))));
}

int default_full_n_max(double eta) {
    check_eta(eta);
    return std::max(256, static_cast<int>(std::ceil(4.0 * eta)));
}

namespace {

const EigOptions kEdOptions{std::size_t{1} << 14, 1e-12};

}  // namespace

EdEcho::EdEcho(const Eigen::MatrixXd& initial_hamiltonian, const Eigen::MatrixXd& final_hamiltonian)
    : EdEcho(ground_state(eig_symmetric(initial_hamiltonian, kEdOptions)),
             eig_symmetric(final_hamiltonian, kEdOptions)) {}

EdEcho::EdEcho(Eigen::VectorXd psi0, const EigenDecomposition& final_dec)
    : psi0_(std::move(psi0)),
      echo_(final_dec, psi0_),
      gap_(final_dec.values.size() > 1 ? final_dec.values(1) - final_dec.values(0) : 0.0) {}

EdEcho prepare_effective(double lambda_i, double lambda_f, double eta, int n_max) {
    if (n_max < kMinEffectiveNMax) {
        throw DomainError("effective ED needs n_max >= " + std::to_string(kMinEffectiveNMax));
    }
    return EdEcho(effective_hamiltonian(lambda_i, eta, n_max), effective_hamiltonian(lambda_f, eta, n_max));
}

EdEcho prepare_full(double lambda_i, double lambda_f, double eta, int n_max) {
    if (n_max < 1) throw DomainError("n_max must be positive");
    return EdEcho(full_hamiltonian(lambda_i, eta, n_max), full_hamiltonian(lambda_f, eta, n_max));
}

namespace {

template <class Prep>
EchoTrace converged_trace(const QuenchSpec& spec, int n_max, Prep&& prep, const TimeGrid& grid,
                          const Execution& exec) {
    const EdEcho coarse = prep(n_max);
    const EdEcho fine = prep(2 * n_max);
    EchoTrace trace = make_trace(spec, [&](double t) { return coarse(t); }, grid, exec);
    const auto check = sample([&](double t) { return fine(t); }, grid, exec);
    for (std::size_t i = 0; i < check.size(); ++i) {
        if (std::abs(check[i] - trace.values[i]) > kTruncationTolerance) {
            throw NumericalError("unconverged truncation");
        }
    }
    return trace;
}

QuenchSpec qrm_spec(double delta_lambda, double g, double eta, int n_max, QrmEngine engine) {
    QuenchSpec spec{ModelId::qrm, SystemSize::finite(eta), delta_lambda, g};
    spec.extra.n_max = n_max;
    spec.extra.qrm_engine = engine;
    spec.validate();
    return spec;
}

}  // namespace

EchoTrace echo_effective_ed(double delta_lambda, double g, double eta, int n_max, const TimeGrid& grid,
                            const Execution& exec) {
    const double li = 1.0 - delta_lambda;
    if (n_max <= 0) n_max = default_effective_n_max(li, eta);
    const auto spec = qrm_spec(delta_lambda, g, eta, n_max, QrmEngine::effective);
    return converged_trace(
        spec, n_max, [&](int n) { return prepare_effective(li, spec.lambda_f(), eta, n); }, grid, exec);
}

EchoTrace echo_full_ed(double delta_lambda, double g, double eta, int n_max, const TimeGrid& grid,
                       const Execution& exec) {
    const double li = 1.0 - delta_lambda;
    if (n_max <= 0) n_max = default_full_n_max(eta);
    const auto spec = qrm_spec(delta_lambda, g, eta, n_max, QrmEngine::full);
    return converged_trace(
        spec, n_max, [&](int n) { return prepare_full(li, spec.lambda_f(), eta, n); }, grid, exec);
}

}  // namespace loschmidt::qrm
