#include "loschmidt/lmg.hpp"

#include <cmath>
#include <string>

namespace loschmidt::lmg {

namespace {

void check_params(int n_spins, double gamma) {
    if (n_spins < 2 || n_spins % 2 != 0) {
        throw DomainError("LMG needs an even number of spins, got " + std::to_string(n_spins));
    }
    if (gamma == 1.0) throw DomainError("isotropic limit excluded");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in [0, 1)");
}

// Block sizes reach N/2 + 1; allow large chains, full sector stays under the dense cap.
const EigOptions kBlockOptions{std::size_t{1} << 16, 1e-12};

EigenDecomposition solve_block(int n_spins, double lambda, double gamma) {
    const auto h = hamiltonian_matrix(n_spins, lambda, gamma);
    return eig_symmetric(h.strided_block(0, 2), kBlockOptions);
}

}  // namespace

BandedSymmetric hamiltonian_matrix(int n_spins, double lambda, double gamma) {
    check_params(n_spins, gamma);
    const double n = static_cast<double>(n_spins);
    const double s = n / 2.0;
    const double cas = s * (s + 1.0);
    const auto dim = static_cast<std::size_t>(n_spins + 1);
    BandedSymmetric h(dim, 2);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        const double m = static_cast<double>(idx) - s;
        h.set(idx, idx, -(1.0 + gamma) / n * (cas - m * m - n / 2.0) - 2.0 * lambda * m);
        if (idx >= 2) {
            // <m-2| S_-^2 |m>
            const double amp = std::sqrt(cas - m * (m - 1.0)) * std::sqrt(cas - (m - 1.0) * (m - 2.0));
            h.set(idx - 2, idx, -(1.0 - gamma) / (2.0 * n) * amp);
        }
    }
    return h;
}

namespace {

SpectralEcho block_echo(const EigenDecomposition& initial, const EigenDecomposition& final_dec) {
    return SpectralEcho(final_dec, ground_state(initial));
}

}  // namespace

SectorEcho::SectorEcho(int n_spins, double lambda_i, double lambda_f, double gamma)
    : SectorEcho(solve_block(n_spins, lambda_i, gamma), solve_block(n_spins, lambda_f, gamma)) {}

SectorEcho::SectorEcho(const EigenDecomposition& initial, const EigenDecomposition& final_dec)
    : echo_(block_echo(initial, final_dec)),
      gap_(final_dec.values.size() > 1 ? 0.5 * (final_dec.values(1) - final_dec.values(0)) : 0.0),
      ground_energy_(initial.values(0)) {}

EchoTrace echo_trace_finite(int n_spins, double delta_lambda, double g, double gamma, const TimeGrid& grid,
                            const Execution& exec) {
    QuenchSpec spec{ModelId::lmg, SystemSize::finite(n_spins), delta_lambda, g, gamma};
    spec.validate();
    const SectorEcho echo(n_spins, spec.lambda_i(), spec.lambda_f(), gamma);
    return make_trace(spec, [&](double t) { return echo(t); }, grid, exec);
}

Branch branch_of(double lambda) {
    if (lambda == 1.0) throw DomainError("analytic branch undefined at the critical point lambda = 1");
    return lambda < 1.0 ? Branch::below : Branch::above;
}

double squeezing(double lambda, double gamma) {
    if (branch_of(lambda) == Branch::below) {
        if (!(lambda > -1.0)) throw DomainError("lambda must exceed -1");
        return -0.25 * std::log((1.0 - lambda * lambda) / (1.0 - gamma));
    }
    return -0.25 * std::log((lambda - 1.0) / (lambda - gamma));
}

double excitation_gap(double lambda, double gamma) {
    if (branch_of(lambda) == Branch::below) {
        if (!(lambda > -1.0)) throw DomainError("lambda must exceed -1");
        return 2.0 * std::sqrt((1.0 - gamma) * (1.0 - lambda * lambda));
    }
    return 2.0 * std::sqrt((lambda - gamma) * (lambda - 1.0));
}

SqueezeParams squeeze_params(double lambda_i, double lambda_f, double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in [0, 1)");
    const Branch bi = branch_of(lambda_i);
    const Branch bf = branch_of(lambda_f);
    if (bi != bf) throw DomainError("analytic formula not available for a cross-phase quench");
    return SqueezeParams{squeezing(lambda_i, gamma), squeezing(lambda_f, gamma), excitation_gap(lambda_f, gamma), bi};
}

double echo_analytic(double lambda_i, double lambda_f, double gamma, double t) {
    const auto p = squeeze_params(lambda_i, lambda_f, gamma);
    // c^4 + s^4 - 2 s^2 c^2 cos(2 t eps) rewritten as 1 + sinh^2(2x) sin^2(t eps)
    const double a = std::sinh(2.0 * p.x()) * std::sin(t * p.eps_f);
    return 1.0 / std::sqrt(1.0 + a * a);
}

double MinimumBound::fidelity_bound() const { return 1.0 / (2.0 * std::pow(fidelity, -4.0) - 1.0); }

MinimumBound lmin_analytic(double lambda_i, double g, double gamma) {
    const auto p = squeeze_params(lambda_i, lambda_i - g, gamma);
    const double x = p.x();
    return MinimumBound{2.0 / (std::exp(2.0 * x) + std::exp(-2.0 * x)), 1.0 / std::sqrt(std::cosh(x))};
}

Eigen::MatrixXd spin_hamiltonian(int n_spins, double lambda, double gamma) {
    check_params(n_spins, gamma);
    if (n_spins > kOracleMaxSpins) throw DomainError("oracle size cap");
    const std::size_t dim = std::size_t{1} << n_spins;
    const double inv_n = 1.0 / n_spins;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < dim; ++s) {
        const auto row = static_cast<Eigen::Index>(s);
        double sz = 0.0;
        for (int j = 0; j < n_spins; ++j) sz += ((s >> j) & 1U) ? -1.0 : 1.0;
        h(row, row) -= lambda * sz;
        for (int i = 0; i < n_spins; ++i) {
            for (int j = i + 1; j < n_spins; ++j) {
                const std::size_t flipped = s ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
                const bool same = (((s >> i) ^ (s >> j)) & 1U) == 0U;
                // s^x s^x gives 1; s^y s^y gives -1 on aligned pairs, +1 on anti-aligned ones
                const double yy = same ? -1.0 : 1.0;
                h(static_cast<Eigen::Index>(flipped), row) -= inv_n * (1.0 + gamma * yy);
            }
        }
    }
    return h;
}

EchoTrace brute_force_echo(int n_spins, double delta_lambda, double g, double gamma, const TimeGrid& grid) {
    if (n_spins > kOracleMaxSpins) throw DomainError("oracle size cap");
    const double li = 1.0 - delta_lambda;
    const double lf = li - g;
    const EigOptions opts{std::size_t{1} << kOracleMaxSpins, 1e-12};
    const auto dec_i = eig_symmetric(spin_hamiltonian(n_spins, li, gamma), opts);
    const auto dec_f = eig_symmetric(spin_hamiltonian(n_spins, lf, gamma), opts);
    const SpectralEcho echo(dec_f, ground_state(dec_i));
    QuenchSpec spec{ModelId::lmg, SystemSize::finite(n_spins), delta_lambda, g, gamma};
    return make_trace(spec, [&](double t) { return echo(t); }, grid);
}

}  // namespace loschmidt::lmg
