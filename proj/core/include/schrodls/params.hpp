#pragma once

#include <optional>

namespace schrodls {

/// Discretization parameters of the time-quadrature pipeline.
///
/// Invariants maintained by select_params and revalidated after overrides:
///   tau * ||D_mu|| * ||A|| <= 1,  tau = T / n_t,  0 < delta < 1,  Q >= 1.
/// The p-domain margin (left room >= |lambda|_max T + kernel tail radius,
/// right room >= tail radius) is tracked in domain_margin_ok: user-pinned
/// domains may violate it deliberately, trading accuracy for cost.
struct SolverParams {
    double delta = 1e-8;
    double T = 0.0;
    int n_t = 1;
    double tau = 0.0;
    int Q = 2;
    double a = 0.0;  ///< left endpoint of the p-domain
    double b = 0.0;  ///< right endpoint
    int n_p = 1;     ///< log2 of the number of grid points
    int m = 2;       ///< smoothness order used by the selection formulas
    bool domain_margin_ok = true;

    bool symmetric_domain() const { return a == -b; }
    /// Half-width in units of pi (the "R" of symmetric domains [-pi R, pi R]).
    double half_width_over_pi() const { return b / 3.14159265358979323846; }
};

/// Optional user overrides; any field set replaces the selected value.
struct SolverOverrides {
    std::optional<double> T;
    std::optional<double> R;    ///< symmetric half-width in units of pi
    std::optional<double> domain_left;   ///< asymmetric domain [-L, R_right]
    std::optional<double> domain_right;
    std::optional<double> tau;
    std::optional<int> n_p;
    std::optional<int> Q;
    std::optional<int> m;
};

enum class TimeIntegration {
    GaussQuadrature,  ///< composite Gauss-Legendre sum over (m, q) nodes
    ClosedForm,       ///< exact per-mode integral, bypassing quadrature
};

}  // namespace schrodls
