// Su-Schrieffer-Heeger chain with J1 = 1 and lambda = J2 / J1, periodic boundary,
// lower band filled.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "loschmidt/core.hpp"

namespace loschmidt::ssh {

/// Upper-band energy sqrt(1 + lambda^2 + 2 lambda cos k).
double band_energy(double lambda, double k);

/// k = 2 pi m / N for m = -N/2 .. N/2 - 1.
std::vector<double> momentum_grid(int n_cells);

struct SshMode {
    double k;
    double e_i;
    double e_f;
    double overlap;  // d_i . d_f / (E_i E_f); exactly +-1 where sin k = 0

    double factor(double t) const;
};

SshMode make_mode(double lambda_i, double lambda_f, double k);

class ProductEcho {
  public:
    ProductEcho(int n_cells, double lambda_i, double lambda_f);

    double operator()(double t) const;
    const std::vector<SshMode>& modes() const { return modes_; }
    /// Smallest E_+(lambda_f, k) over modes with sin k != 0.
    double gap() const;

  private:
    std::vector<SshMode> modes_;
    bool log_accumulate_;
};

EchoTrace echo_trace(int n_cells, double delta_lambda, double g, const TimeGrid& grid,
                     const Execution& exec = {});
EchoTrace echo_trace_lambdas(int n_cells, double lambda_i, double lambda_f, const TimeGrid& grid,
                             const Execution& exec = {});

/// Bloch Hamiltonian [[0, 1 + l e^{-ik}], [1 + l e^{ik}, 0]].
Eigen::Matrix2cd bloch_hamiltonian(double lambda, double k);

/// Per-k amplitude <u_-(l_i)| exp(-i t H_k(l_f)) |u_-(l_i)> from numerical 2x2 eigenvectors.
std::complex<double> oracle_amplitude(double lambda_i, double lambda_f, double k, double t);

EchoTrace oracle_echo(int n_cells, double delta_lambda, double g, const TimeGrid& grid);
EchoTrace oracle_echo_lambdas(int n_cells, double lambda_i, double lambda_f, const TimeGrid& grid);

}  // namespace loschmidt::ssh
