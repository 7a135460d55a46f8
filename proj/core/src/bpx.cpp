#include "schrodls/bpx.hpp"

#include <cmath>
#include <stdexcept>

#include "schrodls/errors.hpp"

namespace schrodls {

Eigen::MatrixXd bpx(const MeshHierarchy& hier) {
    const int J = hier.finest();
    const Eigen::Index n = hier.levels[static_cast<std::size_t>(J)].interior_count;
    if (n > 8192) throw std::invalid_argument("bpx: dense assembly capped at 8192 dofs");
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j <= J; ++j) {
        const Eigen::SparseMatrix<double> chain = hier.chain_to_finest(j);
        B += Eigen::MatrixXd(chain * chain.transpose());
    }
    return B;
}

PreconditionedSystem preconditioned_problem(const DiscreteSystem& sys, const Eigen::MatrixXd& B,
                                            double eps, double multiplier) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("preconditioned_problem: eps must lie in (0,1)");
    if (B.rows() != sys.A.rows())
        throw std::invalid_argument("preconditioned_problem: dimension mismatch");

    const double sym_a = (sys.A - sys.A.transpose()).norm();
    const double sym_b = (B - B.transpose()).norm();
    if (sym_a > 1e-10 * sys.A.norm() || sym_b > 1e-10 * B.norm())
        throw std::invalid_argument("preconditioned_problem: inputs must be symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(B);
    if (eb.info() != Eigen::Success || eb.eigenvalues().minCoeff() <= 0.0)
        throw NumericalError("preconditioned_problem: B is not positive definite");
    const Eigen::MatrixXd b_half =
        eb.eigenvectors() * eb.eigenvalues().cwiseSqrt().asDiagonal() *
        eb.eigenvectors().transpose();
    const Eigen::MatrixXd b_half_inv =
        eb.eigenvectors() * eb.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        eb.eigenvectors().transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b_half * sys.A * b_half);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
        throw NumericalError("preconditioned_problem: A is not positive definite");

    PreconditionedSystem out;
    out.W = B * sys.A;
    out.c = B * sys.b;
    out.lambda = es.eigenvalues();
    out.V = b_half * es.eigenvectors();
    out.Vinv = es.eigenvectors().transpose() * b_half_inv;
    out.kappa_W = out.lambda.maxCoeff() / out.lambda.minCoeff();
    out.eps = eps;
    out.multiplier = multiplier;

    // kappa_pm from the symmetric part figures of the paper-style truncation
    const Eigen::MatrixXd C = out.W + out.W.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ec(C);
    const double lam_min_ba = out.lambda.minCoeff();
    out.kappa_plus = std::max(ec.eigenvalues().maxCoeff(), 0.0) / (2.0 * lam_min_ba);
    out.kappa_minus = std::max(-ec.eigenvalues().minCoeff(), 0.0) / (2.0 * lam_min_ba);

    const double logk = std::log(out.kappa_W / eps);
    const double loge = std::log(1.0 / eps);
    out.L_suggested = multiplier * (out.kappa_plus * logk + loge + 0.5);
    out.R_suggested = multiplier * (out.kappa_minus * logk + loge + 0.5);
    return out;
}

}  // namespace schrodls
