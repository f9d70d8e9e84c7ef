#include "loschmidt/linalg.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "loschmidt/core.hpp"

namespace loschmidt {

Eigen::MatrixXd SymTridiagonal::dense() const {
    const auto n = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[i];
    for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = off[i];
    return m;
}

BandedSymmetric::BandedSymmetric(std::size_t dim, std::size_t bandwidth) : dim_(dim) {
    if (dim == 0) throw DomainError("matrix dimension must be positive");
    bands_.reserve(bandwidth + 1);
    for (std::size_t d = 0; d <= bandwidth; ++d) bands_.emplace_back(dim > d ? dim - d : 0, 0.0);
}

double BandedSymmetric::at(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    const std::size_t d = j - i;
    if (j >= dim_) throw DomainError("band matrix index out of range");
    return d < bands_.size() ? bands_[d][i] : 0.0;
}

void BandedSymmetric::set(std::size_t i, std::size_t j, double value) {
    if (i > j) std::swap(i, j);
    const std::size_t d = j - i;
    if (j >= dim_ || d >= bands_.size()) throw DomainError("band matrix index outside band");
    bands_[d][i] = value;
}

Eigen::MatrixXd BandedSymmetric::dense() const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t d = 0; d < bands_.size(); ++d) {
        for (std::size_t i = 0; i + d < dim_; ++i) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + d)) = bands_[d][i];
            m(static_cast<Eigen::Index>(i + d), static_cast<Eigen::Index>(i)) = bands_[d][i];
        }
    }
    return m;
}

SymTridiagonal BandedSymmetric::strided_block(std::size_t offset, std::size_t stride) const {
    if (stride == 0 || stride >= bands_.size()) throw DomainError("stride outside band");
    for (std::size_t d = 1; d < bands_.size(); ++d) {
        if (d == stride) continue;
        for (double v : bands_[d]) {
            if (v != 0.0) throw DomainError("band matrix couples indices not separated by the stride");
        }
    }
    SymTridiagonal block;
    for (std::size_t i = offset; i < dim_; i += stride) {
        block.diag.push_back(bands_[0][i]);
        if (i + stride < dim_) block.off.push_back(bands_[stride][i]);
    }
    return block;
}

namespace {

void check_dim(std::size_t dim, const EigOptions& options) {
    if (dim == 0) throw DomainError("empty matrix");
    if (dim > options.max_dim) {
        throw DomainError("matrix dimension " + std::to_string(dim) + " exceeds configured cap " +
                          std::to_string(options.max_dim));
    }
}

EigenDecomposition from_solver(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& solver) {
    if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
    return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

EigenDecomposition eig_symmetric(const Eigen::MatrixXd& matrix, const EigOptions& options) {
    if (matrix.rows() != matrix.cols()) throw DomainError("matrix must be square");
    check_dim(static_cast<std::size_t>(matrix.rows()), options);
    const double scale = std::max(matrix.cwiseAbs().maxCoeff(), 1e-300);
    const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
    if (!std::isfinite(asym) || asym > options.symmetry_tolerance * scale) {
        throw DomainError("matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::ComputeEigenvectors);
    return from_solver(solver);
}

EigenDecomposition eig_symmetric(const SymTridiagonal& matrix, const EigOptions& options) {
    check_dim(matrix.dim(), options);
    if (matrix.off.size() + 1 != matrix.diag.size()) throw DomainError("tridiagonal shape mismatch");
    const auto n = static_cast<Eigen::Index>(matrix.dim());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(matrix.diag.data(), n);
    Eigen::VectorXd off = n > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(matrix.off.data(), n - 1))
                                : Eigen::VectorXd(0);
    if (n == 1) return EigenDecomposition{diag, Eigen::MatrixXd::Identity(1, 1)};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    return from_solver(solver);
}

EigenDecomposition eig_symmetric(const BandedSymmetric& matrix, const EigOptions& options) {
    if (matrix.bandwidth() == 1) {
        SymTridiagonal t{matrix.band(0), matrix.band(1)};
        return eig_symmetric(t, options);
    }
    check_dim(matrix.dim(), options);
    return eig_symmetric(matrix.dense(), options);
}

SpectralEcho::SpectralEcho(const EigenDecomposition& final_hamiltonian, const Eigen::VectorXd& initial_state) {
    const Eigen::VectorXd overlaps = final_hamiltonian.vectors.transpose() * initial_state;
    const double e0 = final_hamiltonian.values(0);
    for (Eigen::Index n = 0; n < overlaps.size(); ++n) {
        const double w = overlaps(n) * overlaps(n);
        if (w < 1e-300) continue;
        energies_.push_back(final_hamiltonian.values(n) - e0);
        weights_.push_back(w);
    }
    // eigenvector roundoff leaves sum(w) off by ~1e-13, which swamps 1 - L at short times
    double total = 0.0;
    for (double w : weights_) total += w;
    for (double& w : weights_) w /= total;
}

double SpectralEcho::operator()(double t) const {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t n = 0; n < weights_.size(); ++n) {
        const double phase = energies_[n] * t;
        re += weights_[n] * std::cos(phase);
        im -= weights_[n] * std::sin(phase);
    }
    return re * re + im * im;
}

Eigen::VectorXd ground_state(const EigenDecomposition& decomposition) {
    Eigen::VectorXd v = decomposition.vectors.col(0);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v = -v;
    return v;
}

double energy_variance(const Eigen::MatrixXd& hamiltonian, const Eigen::VectorXd& psi) {
    const Eigen::VectorXd h_psi = hamiltonian * psi;
    const double mean = psi.dot(h_psi);
    return h_psi.squaredNorm() - mean * mean;
}

}  // namespace loschmidt
