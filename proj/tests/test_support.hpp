#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace testsupport {

inline std::complex<double> randc(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    return {g(rng), g(rng)};
}

inline Eigen::VectorXcd random_vector(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = randc(rng);
    return v;
}

inline Eigen::MatrixXcd random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::MatrixXcd z(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) z(i, j) = randc(rng);
    return Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();
}

// Hermitian matrix with |lambda| in [1, kappa_max]; signs mixed unless
// positive_definite is requested. Extremes 1 and kappa_max always present.
inline Eigen::MatrixXcd random_hermitian(Eigen::Index n, double kappa_max,
                                         std::mt19937_64& rng,
                                         bool positive_definite = false) {
    const Eigen::MatrixXcd q = random_unitary(n, rng);
    std::uniform_real_distribution<double> u(1.0, kappa_max);
    std::bernoulli_distribution flip(0.5);
    Eigen::VectorXd lam(n);
    lam[0] = 1.0;
    if (n > 1) lam[1] = kappa_max;
    for (Eigen::Index i = 2; i < n; ++i) lam[i] = u(rng);
    if (!positive_definite)
        for (Eigen::Index i = 0; i < n; ++i)
            if (flip(rng)) lam[i] = -lam[i];
    return q * lam.asDiagonal() * q.adjoint();
}

inline const Eigen::MatrixXcd& ns3x3_matrix() {
    static const Eigen::MatrixXcd a = [] {
        Eigen::MatrixXcd m(3, 3);
        m << 1, 1, 0, 0, 1, 1, 0, 0, 1;
        return m;
    }();
    return a;
}

inline const Eigen::VectorXcd& ns3x3_rhs() {
    static const Eigen::VectorXcd b = Eigen::VectorXcd::Ones(3);
    return b;
}

inline const Eigen::VectorXcd& ns3x3_solution() {
    static const Eigen::VectorXcd x = [] {
        Eigen::VectorXcd v(3);
        v << 1, 0, 1;
        return v;
    }();
    return x;
}

}  // namespace testsupport
