#include "schrodls/poisson.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace schrodls {
namespace {

struct TriangleGeometry {
    std::array<Eigen::Vector2d, 3> p;
    double area;
    Eigen::Matrix<double, 2, 3> grad;  // constant P1 basis gradients
};

TriangleGeometry triangle_geometry(const MeshLevel& mesh, Eigen::Index t) {
    TriangleGeometry g;
    for (int a = 0; a < 3; ++a)
        g.p[static_cast<std::size_t>(a)] = mesh.vertices.row(mesh.triangles(t, a)).transpose();
    Eigen::Matrix2d B;
    B.col(0) = g.p[1] - g.p[0];
    B.col(1) = g.p[2] - g.p[0];
    const double det = B.determinant();
    g.area = 0.5 * std::abs(det);
    Eigen::Matrix<double, 2, 3> ref;
    ref << -1.0, 1.0, 0.0, -1.0, 0.0, 1.0;
    g.grad = B.inverse().transpose() * ref;
    return g;
}

// phi_a at the three edge midpoints (m01, m12, m20)
constexpr double kPhiAtMid[3][3] = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};

}  // namespace

DiscreteSystem poisson1d_fd(int M, const std::function<double(double)>& f, double u_left,
                            double u_right) {
    if (M < 2) throw std::invalid_argument("poisson1d_fd: M must be >= 2");
    const int n = M - 1;
    const double dx = 1.0 / static_cast<double>(M);
    const double w = 1.0 / (dx * dx);
    DiscreteSystem sys;
    sys.A = Eigen::MatrixXd::Zero(n, n);
    sys.b = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        sys.A(j, j) = 2.0 * w;
        if (j > 0) sys.A(j, j - 1) = -w;
        if (j + 1 < n) sys.A(j, j + 1) = -w;
        sys.b[j] = f((j + 1) * dx);
    }
    sys.b[0] += u_left * w;
    sys.b[n - 1] += u_right * w;
    sys.fd_intervals = M;
    sys.fd_u_left = u_left;
    sys.fd_u_right = u_right;
    return sys;
}

DiscreteSystem poisson2d_p1(const MeshHierarchy& hier, int level,
                            const std::function<double(double, double)>& f,
                            const std::function<double(double, double)>& dirichlet) {
    if (level < 0 || level > hier.finest())
        throw std::invalid_argument("poisson2d_p1: level out of range");
    const MeshLevel& mesh = hier.levels[static_cast<std::size_t>(level)];
    const Eigen::Index n = mesh.interior_count;

    DiscreteSystem sys;
    sys.mesh = mesh;
    sys.A = Eigen::MatrixXd::Zero(n, n);
    sys.b = Eigen::VectorXd::Zero(n);
    sys.boundary_values = Eigen::VectorXd::Zero(mesh.vertices.rows());
    for (Eigen::Index v = 0; v < mesh.vertices.rows(); ++v)
        if (mesh.interior_index[v] < 0)
            sys.boundary_values[v] = dirichlet(mesh.vertices(v, 0), mesh.vertices(v, 1));

    for (Eigen::Index t = 0; t < mesh.triangles.rows(); ++t) {
        const TriangleGeometry g = triangle_geometry(mesh, t);
        Eigen::Matrix3d k_local = g.area * g.grad.transpose() * g.grad;
        const std::array<Eigen::Vector2d, 3> mids = {0.5 * (g.p[0] + g.p[1]),
                                                     0.5 * (g.p[1] + g.p[2]),
                                                     0.5 * (g.p[2] + g.p[0])};
        std::array<double, 3> f_mid{};
        for (int mi = 0; mi < 3; ++mi)
            f_mid[static_cast<std::size_t>(mi)] =
                f(mids[static_cast<std::size_t>(mi)].x(), mids[static_cast<std::size_t>(mi)].y());

        for (int a = 0; a < 3; ++a) {
            const int va = mesh.triangles(t, a);
            const int ia = mesh.interior_index[va];
            if (ia < 0) continue;
            double load = 0.0;
            for (int mi = 0; mi < 3; ++mi)
                load += f_mid[static_cast<std::size_t>(mi)] * kPhiAtMid[mi][a];
            sys.b[ia] += g.area / 3.0 * load;
            for (int c = 0; c < 3; ++c) {
                const int vc = mesh.triangles(t, c);
                const int ic = mesh.interior_index[vc];
                if (ic >= 0)
                    sys.A(ia, ic) += k_local(a, c);
                else
                    sys.b[ia] -= k_local(a, c) * sys.boundary_values[vc];
            }
        }
    }
    return sys;
}

FemErrors fem_error_norms(const DiscreteSystem& sys, const Eigen::VectorXd& x,
                          const ExactSolution& exact) {
    if (!sys.mesh) throw std::invalid_argument("fem_error_norms: system has no mesh");
    if (!exact.value || !exact.grad_x || !exact.grad_y)
        throw std::invalid_argument("fem_error_norms: exact solution evaluator missing");
    const MeshLevel& mesh = *sys.mesh;
    if (x.size() != mesh.interior_count)
        throw std::invalid_argument("fem_error_norms: solution length mismatch");

    Eigen::VectorXd full = sys.boundary_values;
    for (Eigen::Index v = 0; v < mesh.vertices.rows(); ++v)
        if (mesh.interior_index[v] >= 0) full[v] = x[mesh.interior_index[v]];

    double l2 = 0.0, h1 = 0.0;
    for (Eigen::Index t = 0; t < mesh.triangles.rows(); ++t) {
        const TriangleGeometry g = triangle_geometry(mesh, t);
        Eigen::Vector3d vals;
        for (int a = 0; a < 3; ++a) vals[a] = full[mesh.triangles(t, a)];
        const Eigen::Vector2d grad_h = g.grad * vals;
        const std::array<Eigen::Vector2d, 3> mids = {0.5 * (g.p[0] + g.p[1]),
                                                     0.5 * (g.p[1] + g.p[2]),
                                                     0.5 * (g.p[2] + g.p[0])};
        for (int mi = 0; mi < 3; ++mi) {
            const auto& m = mids[static_cast<std::size_t>(mi)];
            double uh = 0.0;
            for (int a = 0; a < 3; ++a) uh += kPhiAtMid[mi][a] * vals[a];
            const double du = uh - exact.value(m.x(), m.y());
            const double dgx = grad_h.x() - exact.grad_x(m.x(), m.y());
            const double dgy = grad_h.y() - exact.grad_y(m.x(), m.y());
            l2 += g.area / 3.0 * du * du;
            h1 += g.area / 3.0 * (dgx * dgx + dgy * dgy);
        }
    }
    return {std::sqrt(l2), std::sqrt(h1)};
}

double fd_max_nodal_error(const DiscreteSystem& sys, const Eigen::VectorXd& x,
                          const std::function<double(double)>& exact) {
    if (sys.fd_intervals < 2) throw std::invalid_argument("fd_max_nodal_error: not an FD system");
    const double dx = 1.0 / static_cast<double>(sys.fd_intervals);
    double worst = 0.0;
    for (int j = 0; j < sys.fd_intervals - 1; ++j)
        worst = std::max(worst, std::abs(x[j] - exact((j + 1) * dx)));
    return worst;
}

}  // namespace schrodls
