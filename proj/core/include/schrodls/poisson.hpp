#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>

#include "schrodls/mesh.hpp"

namespace schrodls {

struct ExactSolution {
    std::function<double(double, double)> value;
    std::function<double(double, double)> grad_x;
    std::function<double(double, double)> grad_y;
};

/// A discretized SPD model problem: stiffness/FD matrix over interior dofs,
/// load vector with Dirichlet lift folded in, plus the geometry needed to
/// evaluate error norms afterwards.
struct DiscreteSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;

    // FEM geometry (empty for the 1-D FD system)
    std::optional<MeshLevel> mesh;
    Eigen::VectorXd boundary_values;  ///< full-nodal lift, zero at interior dofs

    // 1-D metadata
    int fd_intervals = 0;
    double fd_u_left = 0.0;
    double fd_u_right = 0.0;

    std::optional<ExactSolution> exact;
};

/// Central-difference discretization of -u'' = f on (0,1) with M intervals and
/// Dirichlet data u(0) = u_left, u(1) = u_right. Requires M >= 2.
DiscreteSystem poisson1d_fd(int M, const std::function<double(double)>& f, double u_left,
                            double u_right);

/// P1 stiffness matrix and load vector on hierarchy level `level`.
/// Load integrated by the 3-point edge-midpoint rule (exact for quadratics);
/// non-homogeneous Dirichlet data imposed by nodal interpolation lift.
DiscreteSystem poisson2d_p1(const MeshHierarchy& hier, int level,
                            const std::function<double(double, double)>& f,
                            const std::function<double(double, double)>& dirichlet);

/// L2 and H1-seminorm errors of the P1 solution (interior dofs x + stored
/// boundary lift) against an exact solution, by the 3-point edge-midpoint rule.
struct FemErrors {
    double l2 = 0.0;
    double h1 = 0.0;
};
FemErrors fem_error_norms(const DiscreteSystem& sys, const Eigen::VectorXd& x,
                          const ExactSolution& exact);

/// Max nodal error of the 1-D FD solution against a closed-form solution.
double fd_max_nodal_error(const DiscreteSystem& sys, const Eigen::VectorXd& x,
                          const std::function<double(double)>& exact);

}  // namespace schrodls
