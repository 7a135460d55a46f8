#pragma once

#include <Eigen/Dense>

#include <complex>

#include "schrodls/aux_grid.hpp"
#include "schrodls/kernels.hpp"

namespace schrodls {

/// Linear system A x = b together with a spectral decomposition
/// A = V diag(lambda) V^{-1}, lambda real.
///
/// Hermitian problems carry a unitary V (V^{-1} = V^dagger). The
/// preconditioned path feeds in a matrix that is merely similar to an SPD
/// one; it shares all the per-mode machinery through the same decomposition.
struct SpectralProblem {
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;
    Eigen::MatrixXcd V;
    Eigen::MatrixXcd Vinv;
    Eigen::VectorXd lambda;
    bool hermitian = false;
    bool dilated = false;

    Eigen::Index size() const { return A.rows(); }
    double norm() const { return lambda.cwiseAbs().maxCoeff(); }
    double min_abs_eig() const { return lambda.cwiseAbs().minCoeff(); }
    double kappa() const { return norm() / min_abs_eig(); }
    bool positive_definite() const { return lambda.minCoeff() > 0.0; }

    /// Hermitian ingestion: checks ||A - A^dagger||_F <= 1e-12 ||A||_F and
    /// eigendecomposes. Throws std::invalid_argument if not Hermitian.
    static SpectralProblem hermitian_problem(const Eigen::MatrixXcd& A,
                                             const Eigen::VectorXcd& b);

    /// Real-diagonalizable ingestion for the preconditioned path:
    /// A = V diag(lambda) Vinv is verified to 1e-10 relative.
    static SpectralProblem from_similarity(const Eigen::MatrixXcd& A,
                                           const Eigen::VectorXcd& b,
                                           const Eigen::MatrixXcd& V,
                                           const Eigen::MatrixXcd& Vinv,
                                           const Eigen::VectorXd& lambda);
};

/// Eigendecomposition of a Hermitian matrix: A = U diag(lambda) U^dagger.
/// Throws std::invalid_argument if A is not Hermitian within 1e-12 relative.
std::pair<Eigen::MatrixXcd, Eigen::VectorXd> eig_hermitian(const Eigen::MatrixXcd& A);

/// Frequency-side state of the convection system. Column l holds the mode
/// vector v~_{l}(t) of length N. Modes are independent; evolving different
/// columns concurrently is safe.
struct SchrodState {
    const AuxGrid* grid = nullptr;
    Eigen::MatrixXcd modes;  // N x N_p

    double norm() const { return modes.norm(); }
};

/// w~(0) = zeta~ (x) b with zeta~ = forward_coeffs(grid, zeta(p_k)).
/// Throws std::invalid_argument when b = 0.
SchrodState initial_state(const SpectralProblem& problem, const AuxGrid& grid,
                          const KernelSpec& spec);

/// Applies e^{i mu_l A t} to every mode: modes_l <- V e^{i mu_l Lambda t} V^{-1} modes_l.
SchrodState evolve(const SpectralProblem& problem, const SchrodState& state, double t);

/// sigma(omega, T) = int_0^T e^{i omega t} dt, evaluated in a cancellation-free
/// form; equals T at omega = 0.
std::complex<double> phase_time_integral(double omega, double T);

/// Exact time integral of the mode-l propagator:
/// V diag(sigma(mu_l lambda_j, T)) V^{-1} as a dense operator.
Eigen::MatrixXcd mode_time_integral(const SpectralProblem& problem, const AuxGrid& grid,
                                    Eigen::Index mode_index, double T);

/// Action of mode_time_integral on a vector without forming the matrix.
Eigen::VectorXcd apply_mode_time_integral(const SpectralProblem& problem, double mu,
                                          double T, const Eigen::VectorXcd& v);

}  // namespace schrodls
