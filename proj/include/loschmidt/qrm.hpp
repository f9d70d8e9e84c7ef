// Quantum Rabi model H = a^dag a + (eta/2) s_z + (lambda sqrt(eta)/2) s_x (a + a^dag),
// boson frequency set to 1.

#pragma once

#include <Eigen/Dense>

#include "loschmidt/core.hpp"
#include "loschmidt/linalg.hpp"

namespace loschmidt::qrm {

/// Normal-phase gap sqrt(1 - lambda^2).
double gap_normal(double lambda);
/// Normal-phase squeezing r = -1/4 ln(1 - lambda^2).
double squeezing_normal(double lambda);

struct QrmAnalytic {
    double z0;     // r(lambda_i) - r(lambda_f)
    double eps_f;  // sqrt(1 - lambda_f^2)
};

QrmAnalytic analytic_params(double lambda_i, double lambda_f);

/// |cosh^2 z0 - e^{2 i t eps_f} sinh^2 z0|^-1 for eta -> infinity.
double echo_analytic(double delta_lambda, double g, double t);
double echo_analytic_lambdas(double lambda_i, double lambda_f, double t);

struct FidelityBound {
    double fidelity;     // cosh(z0)^{-1/2}
    double l_min_bound;  // (2 F^-4 - 1)^-1
};

FidelityBound fidelity_bound(double delta_lambda, double g);
/// Closed-form echo minimum 2 / (e^{2 z0} + e^{-2 z0}).
double lmin_analytic(double delta_lambda, double g);

/// Positive root xi = e^{2r} of (3/2)(l^4/eta) xi^3 + (1 - l^2) xi^2 - 1 = 0.
double solve_squeezing_cubic(double lambda_i, double eta);

/// Quartic low-energy Hamiltonian a^dag a - (l^2/4) X^2 + (l^4 / 16 eta) X^4, X = a + a^dag,
/// on Fock states 0..n_max. Powers of X are formed in a padded space before truncation.
Eigen::MatrixXd effective_hamiltonian(double lambda, double eta, int n_max);

/// Full spin-boson matrix on |n, s>, index 2n + (s == up), dimension 2 (n_max + 1).
Eigen::MatrixXd full_hamiltonian(double lambda, double eta, int n_max);

int default_effective_n_max(double lambda_i, double eta);
int default_full_n_max(double eta);

inline constexpr int kMinEffectiveNMax = 64;
inline constexpr double kTruncationTolerance = 1e-8;

/// Prepared ED quench: ground state of H(lambda_i), spectral echo under H(lambda_f).
class EdEcho {
  public:
    EdEcho(const Eigen::MatrixXd& initial_hamiltonian, const Eigen::MatrixXd& final_hamiltonian);

    double operator()(double t) const { return echo_(t); }
    /// E1 - E0 of the final Hamiltonian.
    double gap() const { return gap_; }
    const Eigen::VectorXd& initial_state() const { return psi0_; }

  private:
    EdEcho(Eigen::VectorXd psi0, const EigenDecomposition& final_dec);

    Eigen::VectorXd psi0_;
    SpectralEcho echo_;
    double gap_;
};

EdEcho prepare_effective(double lambda_i, double lambda_f, double eta, int n_max);
EdEcho prepare_full(double lambda_i, double lambda_f, double eta, int n_max);

/// n_max <= 0 selects the default. Throws NumericalError("unconverged truncation") when
/// doubling n_max moves any sample by more than 1e-8.
EchoTrace echo_effective_ed(double delta_lambda, double g, double eta, int n_max,
                            const TimeGrid& grid, const Execution& exec = {});
EchoTrace echo_full_ed(double delta_lambda, double g, double eta, int n_max, const TimeGrid& grid,
                       const Execution& exec = {});

}  // namespace loschmidt::qrm
