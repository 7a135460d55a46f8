#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace schrodls {

/// Uniform periodic grid for the auxiliary variable p on [a, b), N_p = 2^n
/// points, together with the pseudo-spectral frequency layout
/// mu_l = 2 pi (l - N_p/2) / (b - a).
///
/// The public coefficient order is this ascending-frequency layout, so the
/// discrete momentum operator is literally diagonal in it. Immutable after
/// construction; all transforms are pure.
struct AuxGrid {
    double a = 0.0;
    double b = 0.0;
    int log2_points = 0;
    Eigen::Index n_points = 0;
    double dp = 0.0;
    std::vector<double> points;       ///< p_k = a + k dp, k = 0..N_p-1
    std::vector<double> frequencies;  ///< mu_l, l = 0..N_p-1
    std::optional<Eigen::Index> zero_index;  ///< k with p_k = 0, when on the grid
};

/// Build the grid. Requires a < b and 1 <= log2_points <= 24.
AuxGrid build_grid(double a, double b, int log2_points);

/// Interpolation coefficients u~_l = (1/N_p) sum_k v_k e^{-i mu_l (p_k - a)}.
Eigen::VectorXcd forward_coeffs(const AuxGrid& grid, const Eigen::VectorXcd& values);

/// Inverse of forward_coeffs: v_k = sum_l u~_l e^{i mu_l (p_k - a)}.
Eigen::VectorXcd inverse_transform(const AuxGrid& grid, const Eigen::VectorXcd& coeffs);

/// ||D_mu|| = max_l |mu_l|.
double momentum_norm(const AuxGrid& grid);

namespace detail {
/// In-place radix-2 transform, no scaling. sign = -1 forward, +1 inverse.
void fft_pow2(Eigen::VectorXcd& data, int sign);
}  // namespace detail

}  // namespace schrodls
