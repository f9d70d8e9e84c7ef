// Lipkin-Meshkov-Glick model
//   H = -(1/N) sum_{i<j} (s^x_i s^x_j + gamma s^y_i s^y_j) - lambda sum_j s^z_j,
// exact diagonalization in the maximal-spin sector S = N/2, and the N -> infinity
// squeezed-state echo on either side of lambda_c = 1.

#pragma once

#include <Eigen/Dense>

#include "loschmidt/core.hpp"
#include "loschmidt/linalg.hpp"

namespace loschmidt::lmg {

/// Matrix of H in the S = N/2 basis, row index m + N/2 for m = -N/2..N/2. Bandwidth 2.
BandedSymmetric hamiltonian_matrix(int n_spins, double lambda, double gamma = 0.0);

/// Ground state of H(lambda_i) evolved with H(lambda_f), restricted to the parity block of
/// the maximal-spin sector that contains m = N/2.
class SectorEcho {
  public:
    SectorEcho(int n_spins, double lambda_i, double lambda_f, double gamma = 0.0);

    double operator()(double t) const { return echo_(t); }
    /// Half the first level spacing of the block holding the initial state.
    double gap() const { return gap_; }
    double ground_energy() const { return ground_energy_; }
    const SpectralEcho& spectral() const { return echo_; }

  private:
    SectorEcho(const EigenDecomposition& initial, const EigenDecomposition& final_dec);

    SpectralEcho echo_;
    double gap_;
    double ground_energy_;
};

EchoTrace echo_trace_finite(int n_spins, double delta_lambda, double g, double gamma,
                            const TimeGrid& grid, const Execution& exec = {});

enum class Branch { below, above };

struct SqueezeParams {
    double xi_i;
    double xi_f;
    double eps_f;
    Branch branch;

    double x() const { return xi_i - xi_f; }
};

Branch branch_of(double lambda);
/// Squeezing parameter: below -1/4 ln[(1-l^2)/(1-g)], above -1/4 ln[(l-1)/(l-g)].
double squeezing(double lambda, double gamma = 0.0);
/// eps_ub = 2 sqrt((1-g)(1-l^2)) below, eps_pp = 2 sqrt((l-g)(l-1)) above.
double excitation_gap(double lambda, double gamma = 0.0);

/// Rejects cross-phase quenches and the critical point itself.
SqueezeParams squeeze_params(double lambda_i, double lambda_f, double gamma = 0.0);

double echo_analytic(double lambda_i, double lambda_f, double gamma, double t);

struct MinimumBound {
    double l_min;     // 2 / (e^{2x} + e^{-2x})
    double fidelity;  // cosh(x)^{-1/2}

    /// (2 F^-4 - 1)^-1.
    double fidelity_bound() const;
};

MinimumBound lmin_analytic(double lambda_i, double g, double gamma = 0.0);

inline constexpr int kOracleMaxSpins = 12;

/// Dense 2^N spin Hamiltonian (bit j set = spin j down).
Eigen::MatrixXd spin_hamiltonian(int n_spins, double lambda, double gamma = 0.0);

EchoTrace brute_force_echo(int n_spins, double delta_lambda, double g, double gamma,
                           const TimeGrid& grid);

}  // namespace loschmidt::lmg
