#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace schrodls {

/// One uniform criss-pattern triangulation of the unit square:
/// n_cells x n_cells cells, each split by its positive-slope diagonal.
struct MeshLevel {
    int n_cells = 0;
    double h = 0.0;
    Eigen::Matrix<double, Eigen::Dynamic, 2> vertices;   // (n+1)^2 rows
    Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;     // 2 n^2 rows, ccw
    Eigen::VectorXi interior_index;  ///< per vertex: interior dof id or -1 on the boundary
    Eigen::Index interior_count = 0;

    Eigen::Index vertex_id(int i, int k) const {
        return static_cast<Eigen::Index>(k) * (n_cells + 1) + i;
    }
};

/// Nested hierarchy T_0 .. T_J starting from a 2x2-cell initial mesh,
/// each refinement connecting edge midpoints. Prolongations act between
/// interior (homogeneous Dirichlet) degrees of freedom.
struct MeshHierarchy {
    std::vector<MeshLevel> levels;
    /// prolongation[j]: level j -> level j+1 (interior-to-interior)
    std::vector<Eigen::SparseMatrix<double>> prolongation;

    int finest() const { return static_cast<int>(levels.size()) - 1; }

    /// I_j = I_{J-1}^J ... I_j^{j+1}: coefficients on level j expressed on the
    /// finest level. Identity for j = finest.
    Eigen::SparseMatrix<double> chain_to_finest(int j) const;
};

/// Build levels 0..J. Requires 0 <= J <= 7.
MeshHierarchy build_hierarchy(int J);

/// Vertex and triangle tables as CSV (x,y / v0,v1,v2 with header rows).
void write_mesh_csv(const MeshLevel& level, const std::string& vertex_path,
                    const std::string& triangle_path);

}  // namespace schrodls
