#include "schrodls/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "schrodls/errors.hpp"

namespace schrodls {

std::pair<Eigen::MatrixXcd, Eigen::VectorXd> eig_hermitian(const Eigen::MatrixXcd& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("eig_hermitian: matrix not square");
    const double scale = A.norm();
    if ((A - A.adjoint()).norm() > 1e-12 * std::max(scale, 1e-300))
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.info() != Eigen::Success)
        throw NumericalError("eig_hermitian: eigendecomposition failed");
    return {es.eigenvectors(), es.eigenvalues()};
}

SpectralProblem SpectralProblem::hermitian_problem(const Eigen::MatrixXcd& A,
                                                   const Eigen::VectorXcd& b) {
    if (A.rows() != b.size())
        throw std::invalid_argument("hermitian_problem: dimension mismatch between A and b");
    auto [U, lambda] = eig_hermitian(A);
    SpectralProblem p;
    p.A = A;
    p.b = b;
    p.V = U;
    p.Vinv = U.adjoint();
    p.lambda = lambda;
    p.hermitian = true;
    return p;
}

SpectralProblem SpectralProblem::from_similarity(const Eigen::MatrixXcd& A,
                                                 const Eigen::VectorXcd& b,
                                                 const Eigen::MatrixXcd& V,
                                                 const Eigen::MatrixXcd& Vinv,
                                                 const Eigen::VectorXd& lambda) {
    if (A.rows() != A.cols() || A.rows() != b.size() || V.rows() != A.rows() ||
        lambda.size() != A.rows())
        throw std::invalid_argument("from_similarity: dimension mismatch");
    const double scale = std::max(A.norm(), 1e-300);
    if ((V * lambda.asDiagonal() * Vinv - A).norm() > 1e-10 * scale)
        throw std::invalid_argument("from_similarity: V diag(lambda) Vinv does not reproduce A");
    SpectralProblem p;
    p.A = A;
    p.b = b;
    p.V = V;
    p.Vinv = Vinv;
    p.lambda = lambda;
    p.hermitian = false;
    return p;
}

SchrodState initial_state(const SpectralProblem& problem, const AuxGrid& grid,
                          const KernelSpec& spec) {
    if (problem.b.norm() == 0.0)
        throw std::invalid_argument("initial_state: right-hand side is zero");
    const Eigen::Index np = grid.n_points;
    Eigen::VectorXcd samples(np);
    for (Eigen::Index k = 0; k < np; ++k)
        samples[k] = kernel_zeta(spec, grid.points[static_cast<std::size_t>(k)]);
    const Eigen::VectorXcd zt = forward_coeffs(grid, samples);

    SchrodState state;
    state.grid = &grid;
    state.modes = problem.b * zt.transpose();  // N x N_p, column l = zt_l * b
    return state;
}

SchrodState evolve(const SpectralProblem& problem, const SchrodState& state, double t) {
    if (state.grid == nullptr) throw std::invalid_argument("evolve: state has no grid");
    SchrodState out;
    out.grid = state.grid;
    Eigen::MatrixXcd bar = problem.Vinv * state.modes;
    const Eigen::Index np = state.grid->n_points;
    for (Eigen::Index l = 0; l < np; ++l) {
        const double mu = state.grid->frequencies[static_cast<std::size_t>(l)];
        for (Eigen::Index j = 0; j < problem.size(); ++j) {
            const double ang = mu * problem.lambda[j] * t;
            bar(j, l) *= std::complex<double>(std::cos(ang), std::sin(ang));
        }
    }
    out.modes = problem.V * bar;
    return out;
}

std::complex<double> phase_time_integral(double omega, double T) {
    if (omega == 0.0) return {T, 0.0};
    // (e^{i w T} - 1)/(i w) = (sin(wT) + 2 i sin^2(wT/2)) / w
    const double s = std::sin(omega * T);
    const double h = std::sin(0.5 * omega * T);
    return {s / omega, 2.0 * h * h / omega};
}

Eigen::MatrixXcd mode_time_integral(const SpectralProblem& problem, const AuxGrid& grid,
                                    Eigen::Index mode_index, double T) {
    if (mode_index < 0 || mode_index >= grid.n_points)
        throw std::invalid_argument("mode_time_integral: mode index out of range");
    const double mu = grid.frequencies[static_cast<std::size_t>(mode_index)];
    Eigen::VectorXcd diag(problem.size());
    for (Eigen::Index j = 0; j < problem.size(); ++j)
        diag[j] = phase_time_integral(mu * problem.lambda[j], T);
    return problem.V * diag.asDiagonal() * problem.Vinv;
}

Eigen::VectorXcd apply_mode_time_integral(const SpectralProblem& problem, double mu,
                                          double T, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd bar = problem.Vinv * v;
    for (Eigen::Index j = 0; j < problem.size(); ++j)
        bar[j] *= phase_time_integral(mu * problem.lambda[j], T);
    return problem.V * bar;
}

}  // namespace schrodls
