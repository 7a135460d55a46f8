#include "schrodls/aux_grid.hpp"

#include <cmath>
#include <stdexcept>

#include "schrodls/errors.hpp"

namespace schrodls {
namespace {
constexpr double kPi = 3.14159265358979323846;
}

namespace detail {

void fft_pow2(Eigen::VectorXcd& data, int sign) {
    const Eigen::Index n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: length must be a power of two");

    // bit-reversal permutation
    for (Eigen::Index i = 1, j = 0; i < n; ++i) {
        Eigen::Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (Eigen::Index len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (Eigen::Index i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (Eigen::Index k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace detail

AuxGrid build_grid(double a, double b, int log2_points) {
    if (!(a < b)) throw std::invalid_argument("build_grid: requires a < b");
    if (log2_points < 1 || log2_points > 24)
        throw std::invalid_argument("build_grid: log2_points must lie in [1, 24]");

    AuxGrid g;
    g.a = a;
    g.b = b;
    g.log2_points = log2_points;
    g.n_points = Eigen::Index(1) << log2_points;
    g.dp = (b - a) / static_cast<double>(g.n_points);
    g.points.resize(static_cast<std::size_t>(g.n_points));
    g.frequencies.resize(static_cast<std::size_t>(g.n_points));
    const double width = b - a;
    for (Eigen::Index k = 0; k < g.n_points; ++k) {
        g.points[static_cast<std::size_t>(k)] = a + static_cast<double>(k) * g.dp;
        g.frequencies[static_cast<std::size_t>(k)] =
            2.0 * kPi * (static_cast<double>(k) - static_cast<double>(g.n_points) / 2.0) / width;
    }

    // p = 0 lies on the grid iff -a/dp is an integer in [0, N_p).
    const double t = -a / g.dp;
    const auto k = static_cast<Eigen::Index>(std::llround(t));
    if (k >= 0 && k < g.n_points && std::abs(a + static_cast<double>(k) * g.dp) <= 1e-9 * width)
        g.zero_index = k;

    return g;
}

Eigen::VectorXcd forward_coeffs(const AuxGrid& grid, const Eigen::VectorXcd& values) {
    const Eigen::Index n = grid.n_points;
    if (values.size() != n)
        throw std::invalid_argument("forward_coeffs: length mismatch with grid");
    Eigen::VectorXcd work = values;
    detail::fft_pow2(work, -1);
    // u~_l = X[(l + N/2) mod N] / N  (paper order <-> FFT order shift)
    Eigen::VectorXcd out(n);
    const Eigen::Index half = n / 2;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (Eigen::Index l = 0; l < n; ++l) out[l] = work[(l + half) % n] * inv_n;
    return out;
}

Eigen::VectorXcd inverse_transform(const AuxGrid& grid, const Eigen::VectorXcd& coeffs) {
    const Eigen::Index n = grid.n_points;
    if (coeffs.size() != n)
        throw std::invalid_argument("inverse_transform: length mismatch with grid");
    Eigen::VectorXcd work(n);
    const Eigen::Index half = n / 2;
    for (Eigen::Index j = 0; j < n; ++j) work[j] = coeffs[(j + half) % n];
    detail::fft_pow2(work, +1);
    return work;
}

double momentum_norm(const AuxGrid& grid) {
    double m = 0.0;
    for (double mu : grid.frequencies) m = std::max(m, std::abs(mu));
    return m;
}

}  // namespace schrodls
