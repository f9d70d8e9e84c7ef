// Real-symmetric eigendecomposition and the spectral echo built on it.

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace loschmidt {

/// Symmetric tridiagonal matrix: diag.size() == n, off.size() == n - 1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t dim() const { return diag.size(); }
    Eigen::MatrixXd dense() const;
};

/// Symmetric band matrix stored by diagonals: bands[d][i] = A(i, i + d).
class BandedSymmetric {
  public:
    BandedSymmetric(std::size_t dim, std::size_t bandwidth);

    std::size_t dim() const { return dim_; }
    std::size_t bandwidth() const { return bands_.size() - 1; }

    double at(std::size_t i, std::size_t j) const;
    /// Sets A(i, j) and A(j, i); |i - j| must not exceed the bandwidth.
    void set(std::size_t i, std::size_t j, double value);

    const std::vector<double>& band(std::size_t d) const { return bands_.at(d); }
    Eigen::MatrixXd dense() const;

    /// Rows/columns {offset, offset + stride, ...} as a tridiagonal matrix. Valid when every
    /// nonzero coupling connects indices differing by exactly `stride` (checked).
    SymTridiagonal strided_block(std::size_t offset, std::size_t stride) const;

  private:
    std::size_t dim_;
    std::vector<std::vector<double>> bands_;
};

struct EigOptions {
    std::size_t max_dim = 4096;
    double symmetry_tolerance = 1e-12;  // relative to max |A_ij|
};

/// Eigenvalues ascending; eigenvectors stored column-wise, orthonormal.
struct EigenDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

EigenDecomposition eig_symmetric(const Eigen::MatrixXd& matrix, const EigOptions& options = {});
EigenDecomposition eig_symmetric(const SymTridiagonal& matrix, const EigOptions& options = {});
EigenDecomposition eig_symmetric(const BandedSymmetric& matrix, const EigOptions& options = {});

/// L(t) = |sum_n w_n exp(-i E_n t)|^2 for overlap weights w_n = |<E_n|psi0>|^2.
class SpectralEcho {
  public:
    SpectralEcho(const EigenDecomposition& final_hamiltonian, const Eigen::VectorXd& initial_state);

    double operator()(double t) const;

    const std::vector<double>& energies() const { return energies_; }
    const std::vector<double>& weights() const { return weights_; }

  private:
    std::vector<double> energies_;  // shifted by the lowest retained level
    std::vector<double> weights_;
};

/// Ground-state vector (column 0) with a deterministic sign: largest-magnitude entry positive.
Eigen::VectorXd ground_state(const EigenDecomposition& decomposition);

/// <psi|H^2|psi> - <psi|H|psi>^2 for a normalized psi.
double energy_variance(const Eigen::MatrixXd& hamiltonian, const Eigen::VectorXd& psi);

}  // namespace loschmidt
