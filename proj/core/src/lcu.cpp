#include "schrodls/lcu.hpp"

#include <cmath>
#include <stdexcept>

#include "schrodls/errors.hpp"
#include "schrodls/solver.hpp"

namespace schrodls {

CoefficientVector coefficient_vector(const SolverParams& params) {
    const auto [gx, gw] = gauss_rule(params.Q);
    CoefficientVector out;
    out.alpha.resize(static_cast<Eigen::Index>(params.n_t) * params.Q);
    for (int m = 0; m < params.n_t; ++m)
        for (int q = 0; q < params.Q; ++q)
            out.alpha[static_cast<Eigen::Index>(m) * params.Q + q] = params.tau * gw[q];
    out.l1 = out.alpha.sum();
    return out;
}

PipelineResult emulate_pipeline(const SpectralProblem& problem, const AuxGrid& grid,
                                const KernelSpec& spec, const SolverParams& params) {
    const Eigen::Index n = problem.size();
    const Eigen::Index np = grid.n_points;
    if (!grid.zero_index)
        throw std::invalid_argument("emulate_pipeline: p = 0 is not a grid point");
    const Eigen::Index kstar = *grid.zero_index;

    const CoefficientVector coef = coefficient_vector(params);
    const Eigen::Index m_branches = coef.alpha.size();
    Eigen::Index m_pad = 1;
    while (m_pad < m_branches) m_pad <<= 1;
    if (m_pad * np * n > (Eigen::Index(1) << 22))
        throw std::invalid_argument("emulate_pipeline: register dimension exceeds 2^22");

    const auto [gx, gw] = gauss_rule(params.Q);
    const Eigen::Index block = np * n;

    // |coef> amplitudes; alpha >= 0 for Gauss-Legendre so no phases appear
    Eigen::VectorXd coef_amp = Eigen::VectorXd::Zero(m_pad);
    for (Eigen::Index j = 0; j < m_branches; ++j)
        coef_amp[j] = std::sqrt(coef.alpha[j] / coef.l1);

    // normalized initial register |w~(0)>
    SchrodState w0 = initial_state(problem, grid, spec);
    const double w0_norm = w0.modes.norm();
    Eigen::VectorXcd w0_flat(block);  // layout |l> (x) |i>
    for (Eigen::Index l = 0; l < np; ++l)
        w0_flat.segment(l * n, n) = w0.modes.col(l) / w0_norm;

    // steps 1+2: |coef> (x) |w~(0)>;  step 3: select applies U_j = e^{i H t_j}
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(m_pad * block);
    for (Eigen::Index j = 0; j < m_branches; ++j) {
        const int mi = static_cast<int>(j) / params.Q;
        const int qi = static_cast<int>(j) % params.Q;
        const double tj = (static_cast<double>(mi) + gx[qi]) * params.tau;
        SchrodState evolved = evolve(problem, w0, tj);
        for (Eigen::Index l = 0; l < np; ++l)
            state.segment(j * block + l * n, n) =
                coef_amp[j] / w0_norm * evolved.modes.col(l);
    }

    PipelineResult res;
    res.stage_norms[0] = state.norm();

    // step 4: unprepare coefficients. A Householder reflection H with
    // H|coef> = |0> has <0|H = <coef|, which is exactly the LCU amplitude.
    Eigen::VectorXd v = -coef_amp;
    v[0] += 1.0;
    const double v_sq = v.squaredNorm();
    if (v_sq > 1e-30) {
        Eigen::VectorXcd overlap = Eigen::VectorXcd::Zero(block);
        for (Eigen::Index j = 0; j < m_pad; ++j)
            if (v[j] != 0.0) overlap += v[j] * state.segment(j * block, block);
        overlap *= 2.0 / v_sq;
        for (Eigen::Index j = 0; j < m_pad; ++j)
            if (v[j] != 0.0) state.segment(j * block, block) -= v[j] * overlap;
    }

    res.stage_norms[1] = state.norm();

    // step 5: unitary Fourier basis change Phi/sqrt(N_p) per branch and component
    const double scale = 1.0 / std::sqrt(static_cast<double>(np));
    Eigen::VectorXcd row(np);
    for (Eigen::Index j = 0; j < m_pad; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index l = 0; l < np; ++l) row[l] = state[j * block + l * n + i];
            const Eigen::VectorXcd out = inverse_transform(grid, row);
            for (Eigen::Index l = 0; l < np; ++l)
                state[j * block + l * n + i] = out[l] * scale;
        }
    }

    res.stage_norms[2] = state.norm();

    const Eigen::VectorXcd branch0 = state.segment(0, block);
    res.P_w = branch0.squaredNorm();
    const Eigen::VectorXcd slice = branch0.segment(kstar * n, n);
    res.P_x = slice.squaredNorm() / res.P_w;
    res.P_r = res.P_w * res.P_x;
    res.final_state = slice / slice.norm();

    res.figures.alpha_l1 = coef.l1;
    // grid-side kernel norm: ||zeta|| = sqrt(N_p) ||zeta~|| with ||zeta~|| = ||w~(0)||/||b||
    res.figures.zeta_norm =
        std::sqrt(static_cast<double>(np)) * w0_norm / problem.b.norm();
    res.figures.P_w = res.P_w;
    res.figures.P_x = res.P_x;
    res.figures.P_r = res.P_r;
    res.figures.g = 1.0 / std::sqrt(res.P_r);
    return res;
}

QueryCounts query_complexity(double kappa, double norm_a, double xi, double eps, double r) {
    if (!(kappa >= 1.0)) throw std::invalid_argument("query_complexity: kappa must be >= 1");
    if (!(norm_a > 0.0 && xi > 0.0)) throw std::invalid_argument("query_complexity: positive inputs required");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("query_complexity: eps must lie in (0,1)");
    if (!(r > 0.0)) throw std::invalid_argument("query_complexity: r must be positive");
    const double arg = std::max(kappa / (xi * norm_a * eps), 1.0 + 1e-12);
    const double lg = std::log(arg);
    QueryCounts out;
    out.block_queries = kappa * kappa / (xi * norm_a) * std::pow(lg, 1.0 + 1.0 / r);
    out.state_queries = kappa / (xi * norm_a) * std::pow(lg, 0.5 * (1.0 + 1.0 / r));
    out.best_case = xi * norm_a >= 0.5 * kappa;
    return out;
}

double state_epsilon_for_delta(double delta, double xi) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("state_epsilon_for_delta: delta must lie in (0,1)");
    if (!(xi > 0.0)) throw std::invalid_argument("state_epsilon_for_delta: xi must be positive");
    // fixed point of u = delta log^{1/4}(1/u), then eps = u / xi
    double u = delta;
    for (int it = 0; it < 64; ++it)
        u = delta * std::pow(std::max(std::log(1.0 / u), 1.0), 0.25);
    return std::min(u / xi, 0.999);
}

}  // namespace schrodls
