#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>

#include "schrodls/aux_grid.hpp"
#include "schrodls/evolution.hpp"
#include "schrodls/kernels.hpp"
#include "schrodls/lcu.hpp"
#include "schrodls/params.hpp"

namespace schrodls {

/// Hermitian dilation of an arbitrary square system:
/// A~ = [[0, A], [A^dagger, 0]], b~ = [b; 0]. Solving A~ x~ = b~ yields
/// x~ = [0; x] with A x = b.
SpectralProblem dilate(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b);

/// Parameter selection:
///   T   = (kappa/||A||) sqrt(2 log(2 kappa / (||A|| delta)))
///   m   = max(2, ceil(2 log(T/delta) / log(log(1/delta))))
///   left room = |lambda|_max T + kernel_tail_radius(spec, m, delta)
///   N_p = smallest power of two >= (b-a) |zeta|_m^{1/m} sqrt(log(1/delta))
///   tau = 1/(||D_mu|| ||A||),  N_t = ceil(T/tau),  Q = max(2, ceil(log(T/delta)))
/// Overrides replace individual fields; invariants are then revalidated.
/// The tau invariant is hard (throws NumericalError); the p-domain margin is
/// recorded in domain_margin_ok.
SolverParams select_params(const SpectralProblem& problem, const KernelSpec& spec,
                           double delta, const SolverOverrides& overrides = {});

/// Gauss-Legendre nodes and weights on [0, 1]; weights sum to 1 and the rule
/// is exact for polynomials of degree <= 2Q - 1. Requires 1 <= Q <= 64.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_rule(int Q);

/// x_T^d: quadrature (or exact) time integral of the p = 0 slice,
/// accumulated per mode in the eigenbasis. Requires grid.zero_index.
Eigen::VectorXcd integrate_slice(const SpectralProblem& problem, const AuxGrid& grid,
                                 const KernelSpec& spec, const SolverParams& params,
                                 TimeIntegration method = TimeIntegration::GaussQuadrature);

/// Steady-state route: integrates d/dt w~ = i(D_mu (x) A) w~ + zeta~ (x) b from
/// w~(0) = 0 to time T (variation of constants per mode) and reads the p = 0
/// slice off the reconstructed grid-side state. Agrees with integrate_slice
/// by construction of the time integral (Duhamel).
Eigen::VectorXcd steady_state_source(const SpectralProblem& problem, const AuxGrid& grid,
                                     const KernelSpec& spec, double T);

/// Closed-form steady-state approach of the underlying ODE:
/// k = 2: (I - e^{-(A t)^2/2}) A^{-1} b; k = 1: (I - e^{-A t}) A^{-1} b.
/// k = 1 requires a positive definite spectrum.
Eigen::VectorXcd ode_steady_state_oracle(const SpectralProblem& problem, int k, double t);

/// Brute-force tensor-product quadrature of the double integral
/// int_0^T int_{-K}^{K} eta(k) e^{-i k A s} b dk ds. N <= 16 only.
Eigen::VectorXcd lchs_integral_oracle(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b,
                                      const KernelSpec& spec, double T, double K,
                                      double tol = 1e-8);

struct SolveOptions {
    KernelSpec kernel{};
    SolverOverrides overrides{};
    bool exact_integral = false;
    bool force_dilation = false;
    bool compute_oracle_gap = true;
    Eigen::Index oracle_gap_max_dim = Eigen::Index(1) << 12;
};

struct Timings {
    double eig_ms = 0.0;
    double modes_ms = 0.0;
    double total_ms = 0.0;
};

struct SolveReport {
    Eigen::VectorXcd x;
    double residual = 0.0;
    std::optional<double> oracle_gap;
    SolverParams params;
    KernelSpec kernel;
    bool exact_integral = false;
    bool dilated = false;
    double dilation_top_norm = 0.0;  ///< norm of the discarded top block
    LcuFigures lcu;
    Timings timings;
};

/// End-to-end solve: dilates when A is not Hermitian (or when forced),
/// selects parameters, integrates the slice, and fills the report.
SolveReport solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double delta,
                  const SolveOptions& options = {});

/// Same pipeline on a pre-decomposed problem (used by the preconditioned path,
/// which feeds a real-positive-spectrum similarity directly).
SolveReport solve_problem(const SpectralProblem& problem, double delta,
                          const SolveOptions& options = {});

}  // namespace schrodls
