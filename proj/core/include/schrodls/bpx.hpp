#pragma once

#include <Eigen/Dense>

#include "schrodls/mesh.hpp"
#include "schrodls/poisson.hpp"

namespace schrodls {

/// Multilevel additive preconditioner B = sum_j I_j I_j^T on the finest level
/// of the hierarchy (the h_j-power of the general d-dimensional form is 1 in
/// d = 2). Dense; assembled from cached prolongation chains.
Eigen::MatrixXd bpx(const MeshHierarchy& hier);

/// The preconditioned system W x = c with W = B A, c = B b, together with the
/// spectral figures controlling the asymmetric p-domain truncation:
///   kappa_pm = lambda_max^pm(BA + AB) / (2 lambda_min(BA)).
/// W is diagonalized through B^{1/2}: W = V diag(lambda) Vinv with real
/// positive lambda.
struct PreconditionedSystem {
    Eigen::MatrixXd W;
    Eigen::VectorXd c;
    Eigen::VectorXd lambda;    ///< spectrum of BA (= spectrum of B^{1/2} A B^{1/2})
    Eigen::MatrixXd V, Vinv;
    double kappa_W = 0.0;      ///< lambda_max / lambda_min of BA
    double kappa_plus = 0.0;
    double kappa_minus = 0.0;
    double eps = 0.0;
    double multiplier = 1.0;
    /// Domain suggestion [-L, R] from the kappa_pm formulas (log(kappa_W/eps)
    /// terms with the exposed constant multiplier). The solver still enforces
    /// its own certified transport margin on top of these.
    double L_suggested = 0.0;
    double R_suggested = 0.0;
};

PreconditionedSystem preconditioned_problem(const DiscreteSystem& sys, const Eigen::MatrixXd& B,
                                            double eps, double multiplier = 1.0);

}  // namespace schrodls
