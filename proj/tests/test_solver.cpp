#include <doctest.h>

#include <cmath>
#include <random>

#include "schrodls/errors.hpp"
#include "schrodls/solver.hpp"
#include "test_support.hpp"

using namespace schrodls;
using testsupport::ns3x3_matrix;
using testsupport::ns3x3_rhs;
using testsupport::ns3x3_solution;

namespace {
constexpr double kPi = 3.14159265358979323846;
const KernelSpec kFourier{KernelVariant::FourierOdd};

SpectralProblem ns3x3_dilated() { return dilate(ns3x3_matrix(), ns3x3_rhs()); }

SolverParams ns3x3_params(const SpectralProblem& p, double T, int Q = 8) {
    SolverOverrides ov;
    ov.T = T;
    ov.R = 15.0;
    ov.n_p = 9;
    ov.Q = Q;
    return select_params(p, kFourier, 1e-8, ov);
}
}  // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("dilate") {
    SUBCASE("scalar") {
        Eigen::MatrixXcd a(1, 1);
        a << 2.0;
        Eigen::VectorXcd b(1);
        b << 1.0;
        const SpectralProblem p = dilate(a, b);
        CHECK(p.A(0, 1) == std::complex<double>(2.0, 0.0));
        CHECK(p.A(1, 0) == std::complex<double>(2.0, 0.0));
        CHECK(p.A(0, 0) == std::complex<double>(0.0, 0.0));
        const Eigen::VectorXcd x = p.A.colPivHouseholderQr().solve(p.b);
        CHECK(std::abs(x[0]) <= 1e-14);
        CHECK(x[1] == std::complex<double>(0.5, 0.0));
    }
    SUBCASE("upper-triangular ones") {
        const SpectralProblem p = ns3x3_dilated();
        const Eigen::VectorXcd x = p.A.colPivHouseholderQr().solve(p.b);
        CHECK(x.head(3).norm() <= 1e-12);
        CHECK((x.tail(3) - ns3x3_solution()).norm() <= 1e-12);
        // eigenvalues come in +/- singular-value pairs
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ns3x3_matrix());
        for (int i = 0; i < 3; ++i) {
            const double s = svd.singularValues()[i];
            CHECK(p.lambda[i] == doctest::Approx(-svd.singularValues()[2 - i]).epsilon(1e-12));
            CHECK(p.lambda[5 - i] == doctest::Approx(s).epsilon(1e-12));
        }
        CHECK(p.dilated);
    }
}

TEST_CASE("select_params") {
    SUBCASE("identity: T reduces to sqrt(2 log(2/delta))") {
        const auto p = SpectralProblem::hermitian_problem(Eigen::MatrixXcd::Identity(2, 2),
                                                          Eigen::VectorXcd::Ones(2));
        const double delta = 1e-4;
        const SolverParams sp = select_params(p, kFourier, delta);
        CHECK(sp.T == doctest::Approx(std::sqrt(2.0 * std::log(2.0 / delta))).epsilon(1e-12));
    }
    SUBCASE("kappa = 100 formula value") {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
        a(0, 0) = 0.01;
        a(1, 1) = 1.0;
        const auto p = SpectralProblem::hermitian_problem(a, Eigen::VectorXcd::Ones(2));
        const SolverParams sp = select_params(p, kFourier, 1e-6);
        CHECK(sp.T == doctest::Approx(618.2851756998919).epsilon(1e-12));
    }
    SUBCASE("paper overrides validate") {
        const SolverParams sp = ns3x3_params(ns3x3_dilated(), 10.0);
        CHECK(sp.domain_margin_ok);
        CHECK(sp.b == doctest::Approx(15.0 * kPi));
        CHECK(sp.n_p == 9);
        CHECK(sp.tau * (kPi * 512.0 / (30.0 * kPi)) * 1.8019377358048383 <= 1.0 + 1e-9);
    }
    SUBCASE("rejects bad input") {
        const auto p = SpectralProblem::hermitian_problem(Eigen::MatrixXcd::Identity(2, 2),
                                                          Eigen::VectorXcd::Ones(2));
        CHECK_THROWS_AS(select_params(p, kFourier, 1.5), std::invalid_argument);
        CHECK_THROWS_AS(select_params(p, kFourier, 0.0), std::invalid_argument);
        Eigen::MatrixXcd sing = Eigen::MatrixXcd::Zero(2, 2);
        sing(0, 0) = 1.0;
        CHECK_THROWS_AS(select_params(SpectralProblem::hermitian_problem(
                                          sing, Eigen::VectorXcd::Ones(2)),
                                      kFourier, 1e-6),
                        NumericalError);
        // positive-spectrum kernels reject indefinite problems
        CHECK_THROWS_AS(select_params(ns3x3_dilated(),
                                      KernelSpec{KernelVariant::ExponentialAbs}, 1e-6),
                        std::invalid_argument);
        // user tau violating the step invariant
        SolverOverrides ov;
        ov.tau = 1e3;
        CHECK_THROWS_AS(select_params(p, kFourier, 1e-6, ov), NumericalError);
    }
}

TEST_CASE("gauss_rule") {
    const auto [x1, w1] = gauss_rule(1);
    CHECK(x1[0] == doctest::Approx(0.5));
    CHECK(w1[0] == doctest::Approx(1.0));

    const auto [x2, w2] = gauss_rule(2);
    CHECK(x2[0] == doctest::Approx(0.21132486540518708).epsilon(1e-14));
    CHECK(x2[1] == doctest::Approx(0.7886751345948129).epsilon(1e-14));
    CHECK(w2[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(w2[1] == doctest::Approx(0.5).epsilon(1e-14));

    // exactness: int_0^1 x^3 dx = 1/4 with Q = 2
    double s = 0.0;
    for (int q = 0; q < 2; ++q) s += w2[q] * x2[q] * x2[q] * x2[q];
    CHECK(s == doctest::Approx(0.25).epsilon(1e-14));

    for (int q : {3, 8, 23, 64}) {
        const auto [x, w] = gauss_rule(q);
        CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-13));
        // degree 2Q-1 exactness on x^{2Q-1}
        double acc = 0.0;
        for (int i = 0; i < q; ++i) acc += w[i] * std::pow(x[i], 2 * q - 1);
        CHECK(acc == doctest::Approx(1.0 / (2.0 * q)).epsilon(1e-11));
    }
    CHECK_THROWS_AS(gauss_rule(0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_rule(65), std::invalid_argument);
}

TEST_CASE("integrate_slice") {
    std::mt19937_64 rng(21);
    SUBCASE("identity matrix: error is exactly the truncation term") {
        const auto p = SpectralProblem::hermitian_problem(Eigen::MatrixXcd::Identity(2, 2),
                                                          testsupport::random_vector(2, rng));
        SolverOverrides ov;
        ov.T = 4.0;
        const SolverParams sp = select_params(p, kFourier, 1e-10, ov);
        const AuxGrid grid = build_grid(sp.a, sp.b, sp.n_p);
        const Eigen::VectorXcd x =
            integrate_slice(p, grid, kFourier, sp, TimeIntegration::ClosedForm);
        const double want = std::exp(-0.5 * 4.0 * 4.0) * p.b.norm();
        CHECK((x - p.b).norm() == doctest::Approx(want).epsilon(1e-6));
    }
    SUBCASE("quadrature agrees with the exact integral") {
        const Eigen::MatrixXcd a = testsupport::random_hermitian(4, 8.0, rng);
        const auto p = SpectralProblem::hermitian_problem(a, testsupport::random_vector(4, rng));
        SolverOverrides ov;
        ov.T = 6.0;
        ov.Q = 8;
        const SolverParams sp = select_params(p, kFourier, 1e-8, ov);
        const AuxGrid grid = build_grid(sp.a, sp.b, sp.n_p);
        const Eigen::VectorXcd xq = integrate_slice(p, grid, kFourier, sp);
        const Eigen::VectorXcd xe =
            integrate_slice(p, grid, kFourier, sp, TimeIntegration::ClosedForm);
        CHECK((xq - xe).norm() <= 1e-10 * p.b.norm());
    }
    SUBCASE("reference system at T = 15") {
        const SpectralProblem p = ns3x3_dilated();
        const SolverParams sp = ns3x3_params(p, 15.0);
        const AuxGrid grid = build_grid(sp.a, sp.b, sp.n_p);
        const Eigen::VectorXcd x = integrate_slice(p, grid, kFourier, sp);
        const double err = (x.tail(3) - ns3x3_solution()).norm();
        CHECK(err >= 2.0e-10);
        CHECK(err <= 2.5e-10);
    }
    SUBCASE("missing zero grid point") {
        const SpectralProblem p = ns3x3_dilated();
        const SolverParams sp = ns3x3_params(p, 10.0);
        const AuxGrid off = build_grid(0.1, 2.1, 5);
        CHECK_THROWS_AS(integrate_slice(p, off, kFourier, sp), std::invalid_argument);
    }
}

TEST_CASE("solve") {
    std::mt19937_64 rng(33);
    SUBCASE("identity") {
        const Eigen::VectorXcd b = testsupport::random_vector(3, rng);
        const SolveReport rep = solve(Eigen::MatrixXcd::Identity(3, 3), b, 1e-10);
        CHECK((rep.x - b).norm() <= 1e-10 * b.norm());
        CHECK(rep.residual <= 1e-10);
        CHECK_FALSE(rep.dilated);
    }
    SUBCASE("reference non-symmetric system at T = 10") {
        SolveOptions opts;
        opts.overrides.T = 10.0;
        opts.overrides.R = 15.0;
        opts.overrides.n_p = 9;
        opts.overrides.Q = 8;
        const SolveReport rep = solve(ns3x3_matrix(), ns3x3_rhs(), 1e-8, opts);
        CHECK(rep.dilated);
        const double err = (rep.x - ns3x3_solution()).norm();
        CHECK(err >= 4.3e-5);
        CHECK(err <= 6.4e-5);
        CHECK(rep.dilation_top_norm <= 10.0 * 1e-8 * ns3x3_rhs().norm());
    }
    SUBCASE("random Hermitian meets the accuracy model") {
        for (int trial = 0; trial < 3; ++trial) {
            const Eigen::MatrixXcd a = testsupport::random_hermitian(8, 20.0, rng);
            const Eigen::VectorXcd b = testsupport::random_vector(8, rng);
            const SolveReport rep = solve(a, b, 1e-6);
            REQUIRE(rep.oracle_gap.has_value());
            CHECK(*rep.oracle_gap <= 1e-5);
        }
    }
    SUBCASE("scaling covariance") {
        const Eigen::MatrixXcd a = testsupport::random_hermitian(5, 10.0, rng);
        const Eigen::VectorXcd b = testsupport::random_vector(5, rng);
        const Eigen::VectorXcd x1 = solve(a, b, 1e-8).x;
        for (double c : {0.5, 2.0}) {
            const Eigen::VectorXcd xc = solve(c * a, c * b, 1e-8).x;
            CHECK((xc - x1).norm() <= 1e-6 * x1.norm());
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(solve(Eigen::MatrixXcd::Identity(2, 2), Eigen::VectorXcd::Zero(2), 1e-6),
                        std::invalid_argument);
        Eigen::MatrixXcd sing = Eigen::MatrixXcd::Zero(2, 2);
        sing(0, 0) = 1.0;
        CHECK_THROWS_AS(solve(sing, Eigen::VectorXcd::Ones(2), 1e-6), NumericalError);
    }
}

TEST_CASE("steady_state_source") {
    const SpectralProblem p = ns3x3_dilated();
    const SolverParams sp = ns3x3_params(p, 10.0, 12);
    const AuxGrid grid = build_grid(sp.a, sp.b, sp.n_p);

    SUBCASE("zero initial data at T = 0") {
        CHECK(steady_state_source(p, grid, kFourier, 0.0).norm() <= 1e-14);
    }
    SUBCASE("matches the truncated time integral (Duhamel)") {
        const Eigen::VectorXcd via_source = steady_state_source(p, grid, kFourier, 10.0);
        const Eigen::VectorXcd via_quadrature = integrate_slice(p, grid, kFourier, sp);
        CHECK((via_source - via_quadrature).norm() <= 1e-10);
    }
}

TEST_CASE("ode_steady_state_oracle") {
    std::mt19937_64 rng(55);
    SUBCASE("limits and edge cases") {
        const Eigen::MatrixXcd a = testsupport::random_hermitian(4, 6.0, rng, true);
        const Eigen::VectorXcd b = testsupport::random_vector(4, rng);
        const auto p = SpectralProblem::hermitian_problem(a, b);
        CHECK(ode_steady_state_oracle(p, 2, 0.0).norm() <= 1e-14);
        const double t_inf = 50.0 / p.min_abs_eig();
        const Eigen::VectorXcd direct = a.colPivHouseholderQr().solve(b);
        CHECK((ode_steady_state_oracle(p, 2, t_inf) - direct).norm() <= 1e-12 * direct.norm());
        CHECK((ode_steady_state_oracle(p, 1, t_inf) - direct).norm() <= 1e-12 * direct.norm());
    }
    SUBCASE("k = 2 tolerates an indefinite spectrum, k = 1 rejects it") {
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
        d(0, 0) = 1.0;
        d(1, 1) = -1.0;
        const auto p = SpectralProblem::hermitian_problem(d, Eigen::VectorXcd::Ones(2));
        const Eigen::VectorXcd u = ode_steady_state_oracle(p, 2, 8.0);
        CHECK(u[0].real() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(u[1].real() == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK_THROWS_AS(ode_steady_state_oracle(p, 1, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(ode_steady_state_oracle(p, 3, 1.0), std::invalid_argument);
    }
}

TEST_CASE("lchs_integral_oracle") {
    std::mt19937_64 rng(77);
    SUBCASE("scalar closed form") {
        Eigen::MatrixXcd a(1, 1);
        a << 2.0;
        Eigen::VectorXcd b(1);
        b << 1.0;
        const Eigen::VectorXcd x = lchs_integral_oracle(a, b, kFourier, 20.0, 12.0);
        CHECK(std::abs(x[0] - 0.5) <= 1e-8);
    }
    SUBCASE("identity") {
        const Eigen::VectorXcd b = testsupport::random_vector(2, rng);
        const Eigen::VectorXcd x =
            lchs_integral_oracle(Eigen::MatrixXcd::Identity(2, 2), b, kFourier, 20.0, 12.0);
        CHECK((x - b).norm() <= 1e-8 * b.norm());
    }
    SUBCASE("cross-check against solve") {
        const Eigen::MatrixXcd a = testsupport::random_hermitian(4, 10.0, rng);
        const Eigen::VectorXcd b = testsupport::random_vector(4, rng);
        const SolveReport rep = solve(a, b, 1e-7);
        const Eigen::VectorXcd x =
            lchs_integral_oracle(a, b, kFourier, rep.params.T, 12.0);
        CHECK((rep.x - x).norm() <= 1e-6 * b.norm());
    }
    SUBCASE("size cap") {
        CHECK_THROWS_AS(lchs_integral_oracle(Eigen::MatrixXcd::Identity(17, 17),
                                             Eigen::VectorXcd::Ones(17), kFourier, 5.0, 12.0),
                        std::invalid_argument);
    }
}

TEST_CASE("quadrature error law") {
    const SpectralProblem p = ns3x3_dilated();
    for (int q : {2, 3, 4}) {
        const SolverParams sp = ns3x3_params(p, 10.0, q);
        const AuxGrid grid = build_grid(sp.a, sp.b, sp.n_p);
        const Eigen::VectorXcd xq = integrate_slice(p, grid, kFourier, sp);
        const Eigen::VectorXcd xe =
            integrate_slice(p, grid, kFourier, sp, TimeIntegration::ClosedForm);
        // Gauss remainder bound T (Q!)^4 / ((2Q+1)((2Q)!)^3) ||w~(0)||
        double qf = 1.0, q2f = 1.0;
        for (int i = 2; i <= q; ++i) qf *= i;
        for (int i = 2; i <= 2 * q; ++i) q2f *= i;
        const Eigen::VectorXcd zt = forward_coeffs(grid, [&] {
            Eigen::VectorXcd s(grid.n_points);
            for (Eigen::Index k = 0; k < grid.n_points; ++k)
                s[k] = kernel_zeta(kFourier, grid.points[static_cast<std::size_t>(k)]);
            return s;
        }());
        const double w0 = zt.norm() * p.b.norm();
        const double bound =
            sp.T * std::pow(qf, 4) / ((2.0 * q + 1.0) * std::pow(q2f, 3)) * w0;
        CHECK((xq - xe).norm() <= bound);
    }
}

TEST_CASE("truncation-only error matches the per-eigenvalue decay") {
    // diagonal test matrix, b = e_1: the error is (1/lambda_1) e^{-(lambda_1 T)^2/2}
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
    a(0, 0) = 0.5;
    a(1, 1) = 1.0;
    a(2, 2) = 2.0;
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(3);
    b[0] = 1.0;
    SolveOptions opts;
    opts.exact_integral = true;
    opts.overrides.T = 5.0;
    const SolveReport rep = solve(a, b, 1e-10, opts);
    const Eigen::VectorXcd exact = a.colPivHouseholderQr().solve(b);
    const double got = (rep.x - exact).norm();
    const double want = (1.0 / 0.5) * std::exp(-0.5 * (0.5 * 5.0) * (0.5 * 5.0));
    CHECK(got == doctest::Approx(want).epsilon(0.1));
}

TEST_CASE("end-to-end bound with C <= 10") {
    std::mt19937_64 rng(99);
    const double delta = 1e-6;
    const double budget = 10.0 * delta * std::pow(std::log(1.0 / delta), 0.25);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::MatrixXcd a = testsupport::random_hermitian(4, 20.0, rng);
        const Eigen::VectorXcd b = testsupport::random_vector(4, rng);
        const SolveReport rep = solve(a, b, delta);
        REQUIRE(rep.oracle_gap.has_value());
        CHECK(*rep.oracle_gap <= budget);
    }
}

TEST_SUITE_END();
