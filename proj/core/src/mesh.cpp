#include "schrodls/mesh.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "schrodls/errors.hpp"

namespace schrodls {
namespace {

MeshLevel make_level(int n) {
    MeshLevel m;
    m.n_cells = n;
    m.h = 1.0 / static_cast<double>(n);
    const Eigen::Index nv = static_cast<Eigen::Index>(n + 1) * (n + 1);
    m.vertices.resize(nv, 2);
    m.interior_index = Eigen::VectorXi::Constant(nv, -1);
    Eigen::Index dof = 0;
    for (int k = 0; k <= n; ++k) {
        for (int i = 0; i <= n; ++i) {
            const Eigen::Index v = m.vertex_id(i, k);
            m.vertices(v, 0) = i * m.h;
            m.vertices(v, 1) = k * m.h;
            if (i > 0 && i < n && k > 0 && k < n)
                m.interior_index[v] = static_cast<int>(dof++);
        }
    }
    m.interior_count = dof;

    m.triangles.resize(2 * static_cast<Eigen::Index>(n) * n, 3);
    Eigen::Index t = 0;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            const int v00 = static_cast<int>(m.vertex_id(i, k));
            const int v10 = static_cast<int>(m.vertex_id(i + 1, k));
            const int v01 = static_cast<int>(m.vertex_id(i, k + 1));
            const int v11 = static_cast<int>(m.vertex_id(i + 1, k + 1));
            m.triangles.row(t++) << v00, v10, v11;
            m.triangles.row(t++) << v00, v11, v01;
        }
    }
    return m;
}

// Interior-to-interior prolongation by nodal P1 interpolation. Fine nodes at
// coarse vertices copy; edge-midpoint nodes average the edge endpoints (the
// cell center sits on the positive-slope diagonal).
Eigen::SparseMatrix<double> make_prolongation(const MeshLevel& coarse, const MeshLevel& fine) {
    const int nc = coarse.n_cells;
    const int nf = fine.n_cells;
    std::vector<Eigen::Triplet<double>> trips;
    auto push = [&](Eigen::Index row, int ci, int ck, double w) {
        if (ci <= 0 || ci >= nc || ck <= 0 || ck >= nc) return;  // boundary dof vanishes
        trips.emplace_back(row, coarse.interior_index[coarse.vertex_id(ci, ck)], w);
    };
    for (int k = 1; k < nf; ++k) {
        for (int i = 1; i < nf; ++i) {
            const int row = fine.interior_index[fine.vertex_id(i, k)];
            if (i % 2 == 0 && k % 2 == 0) {
                push(row, i / 2, k / 2, 1.0);
            } else if (i % 2 == 1 && k % 2 == 0) {
                push(row, (i - 1) / 2, k / 2, 0.5);
                push(row, (i + 1) / 2, k / 2, 0.5);
            } else if (i % 2 == 0 && k % 2 == 1) {
                push(row, i / 2, (k - 1) / 2, 0.5);
                push(row, i / 2, (k + 1) / 2, 0.5);
            } else {
                push(row, (i - 1) / 2, (k - 1) / 2, 0.5);
                push(row, (i + 1) / 2, (k + 1) / 2, 0.5);
            }
        }
    }
    Eigen::SparseMatrix<double> p(fine.interior_count, coarse.interior_count);
    p.setFromTriplets(trips.begin(), trips.end());
    return p;
}

}  // namespace

Eigen::SparseMatrix<double> MeshHierarchy::chain_to_finest(int j) const {
    const int J = finest();
    if (j < 0 || j > J) throw std::invalid_argument("chain_to_finest: level out of range");
    Eigen::SparseMatrix<double> chain(levels[static_cast<std::size_t>(J)].interior_count,
                                      levels[static_cast<std::size_t>(J)].interior_count);
    chain.setIdentity();
    for (int i = J - 1; i >= j; --i)
        chain = (chain * prolongation[static_cast<std::size_t>(i)]).eval();
    return chain;
}

MeshHierarchy build_hierarchy(int J) {
    if (J < 0 || J > 7) throw std::invalid_argument("build_hierarchy: J must lie in [0, 7]");
    MeshHierarchy h;
    for (int j = 0; j <= J; ++j) h.levels.push_back(make_level(2 << j));
    for (int j = 0; j < J; ++j)
        h.prolongation.push_back(make_prolongation(h.levels[static_cast<std::size_t>(j)],
                                                   h.levels[static_cast<std::size_t>(j) + 1]));
    return h;
}

void write_mesh_csv(const MeshLevel& level, const std::string& vertex_path,
                    const std::string& triangle_path) {
    std::ofstream vf(vertex_path);
    if (!vf) throw InputError("cannot open '" + vertex_path + "' for writing");
    vf << "x,y\n";
    char buf[64];
    for (Eigen::Index v = 0; v < level.vertices.rows(); ++v) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", level.vertices(v, 0),
                      level.vertices(v, 1));
        vf << buf;
    }
    std::ofstream tf(triangle_path);
    if (!tf) throw InputError("cannot open '" + triangle_path + "' for writing");
    tf << "v0,v1,v2\n";
    for (Eigen::Index t = 0; t < level.triangles.rows(); ++t)
        tf << level.triangles(t, 0) << ',' << level.triangles(t, 1) << ','
           << level.triangles(t, 2) << '\n';
}

}  // namespace schrodls
