#include "loschmidt/tfic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "loschmidt/linalg.hpp"

namespace loschmidt::tfic {

namespace {

void check_chain(int n_spins) {
    // N = 2 is allowed here as the single-mode degenerate case; QuenchSpec insists on N >= 4.
    if (n_spins < 2 || n_spins % 2 != 0) {
        throw DomainError("TFIC needs an even number of spins, got " + std::to_string(n_spins));
    }
}

double amp_a(double lambda, double k) { return 2.0 * (lambda - std::cos(k)); }
double amp_b(double k) { return 2.0 * std::sin(k); }

}  // namespace

std::vector<double> momentum_grid(int n_spins, Parity sector) {
    check_chain(n_spins);
    std::vector<double> ks;
    const double n = static_cast<double>(n_spins);
    if (sector == Parity::even) {
        for (int j = 0; j < n_spins / 2; ++j) ks.push_back((2.0 * j + 1.0) * std::numbers::pi / n);
    } else {
        // k = 0 and k = pi are single-fermion modes, not pseudo-spin blocks: left out.
        for (int j = 1; 2 * j < n_spins; ++j) ks.push_back(2.0 * std::numbers::pi * j / n);
    }
    return ks;
}

double dispersion(double lambda, double k) {
    return 2.0 * std::sqrt(std::max(0.0, lambda * lambda - 2.0 * lambda * std::cos(k) + 1.0));
}

double bogoliubov_angle(double lambda, double k) { return std::atan2(amp_b(k), amp_a(lambda, k)); }

double ModeData::overlap() const { return std::cos(theta_f - theta_i); }

double ModeData::factor(double t) const {
    const double c = std::cos(eps_f * t);
    const double s = std::sin(eps_f * t);
    const double o = overlap();
    return c * c + s * s * o * o;
}

std::vector<ModeData> mode_data(int n_spins, double lambda_i, double lambda_f) {
    std::vector<ModeData> modes;
    for (double k : momentum_grid(n_spins, Parity::even)) {
        modes.push_back(ModeData{k, dispersion(lambda_i, k), dispersion(lambda_f, k), bogoliubov_angle(lambda_i, k),
                                 bogoliubov_angle(lambda_f, k)});
    }
    return modes;
}

ProductEcho::ProductEcho(int n_spins, double lambda_i, double lambda_f)
    : modes_(mode_data(n_spins, lambda_i, lambda_f)), log_accumulate_(n_spins > 1000) {}

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

double ProductEcho::floor() const {
    double prod = 1.0;
    for (const auto& m : modes_) prod *= m.overlap() * m.overlap();
    return prod;
}

double ProductEcho::gap() const {
    double g = modes_.front().eps_f;
    for (const auto& m : modes_) g = std::min(g, m.eps_f);
    return g;
}

double ProductEcho::ground_energy(int n_spins, double lambda) {
    double e = 0.0;
    for (double k : momentum_grid(n_spins, Parity::even)) e -= dispersion(lambda, k);
    return e;
}

EchoTrace echo_trace(int n_spins, double delta_lambda, double g, const TimeGrid& grid, const Execution& exec) {
    check_chain(n_spins);
    QuenchSpec spec{ModelId::tfic, SystemSize::finite(n_spins), delta_lambda, g};
    // the two-spin chain only gets the coupling checks
    QuenchSpec probe = spec;
    probe.size = SystemSize::finite(std::max(n_spins, 4));
    probe.validate();
    const ProductEcho echo(n_spins, spec.lambda_i(), spec.lambda_f());
    return make_trace(spec, [&](double t) { return echo(t); }, grid, exec);
}

Eigen::MatrixXd spin_hamiltonian(int n_spins, double lambda) {
    check_chain(n_spins);
    if (n_spins > kOracleMaxSpins) throw DomainError("oracle size cap");
    const std::size_t dim = std::size_t{1} << n_spins;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < dim; ++s) {
        const auto row = static_cast<Eigen::Index>(s);
        double sz = 0.0;
        for (int j = 0; j < n_spins; ++j) sz += ((s >> j) & 1U) ? -1.0 : 1.0;
        h(row, row) -= lambda * sz;
        for (int j = 0; j < n_spins; ++j) {
            const int jn = (j + 1) % n_spins;
            const std::size_t flipped = s ^ (std::size_t{1} << j) ^ (std::size_t{1} << jn);
            h(static_cast<Eigen::Index>(flipped), row) -= 1.0;
        }
    }
    return h;
}

EchoTrace brute_force_echo(int n_spins, double delta_lambda, double g, const TimeGrid& grid) {
    check_chain(n_spins);
    if (n_spins > kOracleMaxSpins) throw DomainError("oracle size cap");
    const double li = 1.0 - delta_lambda;
    const double lf = li - g;
    const EigOptions opts{std::size_t{1} << kOracleMaxSpins, 1e-12};
    const auto dec_i = eig_symmetric(spin_hamiltonian(n_spins, li), opts);
    const double expected = ProductEcho::ground_energy(n_spins, li);
    if (std::abs(dec_i.values(0) - expected) > 1e-8 * std::max(1.0, std::abs(expected))) {
        throw NumericalError("global ground state is not in the even-parity sector");
    }
    const auto dec_f = eig_symmetric(spin_hamiltonian(n_spins, lf), opts);
    const SpectralEcho echo(dec_f, ground_state(dec_i));
    QuenchSpec spec{ModelId::tfic, SystemSize::finite(n_spins), delta_lambda, g};
    return make_trace(spec, [&](double t) { return echo(t); }, grid);
}

}  // namespace loschmidt::tfic
