// Transverse-field Ising chain H = -sum_j [s^x_j s^x_{j+1} + lambda s^z_j], periodic spins.
//
// In the even fermion-parity sector the Jordan-Wigner fermions are anti-periodic and the
// echo factorizes over positive momenta into 2x2 pseudo-spin blocks.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "loschmidt/core.hpp"

namespace loschmidt::tfic {

/// Positive momenta of the pseudo-spin blocks: even sector (2j+1)pi/N, odd sector 2pi j/N
/// with the unpaired k = 0, pi excluded.
std::vector<double> momentum_grid(int n_spins, Parity sector = Parity::even);

/// Single-mode energy 2 sqrt(lambda^2 - 2 lambda cos k + 1).
double dispersion(double lambda, double k);

struct ModeData {
    double k;
    double eps_i;
    double eps_f;
    double theta_i;
    double theta_f;

    /// cos(theta_f - theta_i).
    double overlap() const;
    /// cos^2(eps_f t) + sin^2(eps_f t) cos^2(theta_f - theta_i), in [0, 1].
    double factor(double t) const;
};

/// Bogoliubov angle from cos = A_k / eps_k, sin = B_k / eps_k.
double bogoliubov_angle(double lambda, double k);

std::vector<ModeData> mode_data(int n_spins, double lambda_i, double lambda_f);

/// Product-formula echo over the even-sector modes.
class ProductEcho {
  public:
    ProductEcho(int n_spins, double lambda_i, double lambda_f);

    double operator()(double t) const;
    const std::vector<ModeData>& modes() const { return modes_; }
    /// Time-independent floor prod_k cos^2(theta_f - theta_i).
    double floor() const;
    /// Smallest post-quench mode energy; its revival period pi / gap sets the window.
    double gap() const;
    /// Fermion-parity-sector ground energy -sum_{k>0} eps_k(lambda).
    static double ground_energy(int n_spins, double lambda);

  private:
    std::vector<ModeData> modes_;
    bool log_accumulate_;
};

EchoTrace echo_trace(int n_spins, double delta_lambda, double g, const TimeGrid& grid,
                     const Execution& exec = {});

inline constexpr int kOracleMaxSpins = 12;

/// Dense 2^N Hamiltonian in the s^z product basis (bit j set = spin j down).
Eigen::MatrixXd spin_hamiltonian(int n_spins, double lambda);

/// Literal evaluation of the echo in the 2^N spin basis; N <= 12.
EchoTrace brute_force_echo(int n_spins, double delta_lambda, double g, const TimeGrid& grid);

}  // namespace loschmidt::tfic
