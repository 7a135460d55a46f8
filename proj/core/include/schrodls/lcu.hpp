#pragma once

#include <Eigen/Dense>

#include "schrodls/evolution.hpp"
#include "schrodls/params.hpp"

namespace schrodls {

/// Resource and success-probability figures of the LCU state-preparation
/// pipeline, serialized inside SolveReport.
struct LcuFigures {
    double alpha_l1 = 0.0;   ///< ||alpha||_1, equals T for the Gauss coefficient vector
    double zeta_norm = 0.0;  ///< grid-vector norm ||zeta||
    double xi = 0.0;         ///< ||A^{-1} |b>||
    double P_w = 0.0;        ///< ancilla post-selection probability
    double P_x = 0.0;        ///< p = 0 slice projection probability
    double P_r = 0.0;        ///< overall probability, P_w * P_x
    double g = 0.0;          ///< amplitude-amplification rounds estimate
    double block_queries = 0.0;
    double state_queries = 0.0;
    bool best_case = false;  ///< xi ||A|| = Omega(kappa) regime detected
};

/// Flattened Gauss coefficient vector alpha_{m Q + q} = tau w_q, all positive,
/// summing to T exactly up to roundoff.
struct CoefficientVector {
    Eigen::VectorXd alpha;
    double l1 = 0.0;
};
CoefficientVector coefficient_vector(const SolverParams& params);

/// State-vector emulation of the five-step LCU map
/// (coefficient prep, state prep, select, unprep, Fourier basis change)
/// followed by post-selection on the ancilla zero branch and on |k*>.
struct PipelineResult {
    Eigen::VectorXcd final_state;  ///< normalized post-selected state
    double P_w = 0.0;
    double P_x = 0.0;
    double P_r = 0.0;
    double stage_norms[3] = {0.0, 0.0, 0.0};  ///< after select / unprep / Fourier, all 1
    LcuFigures figures;
};
PipelineResult emulate_pipeline(const SpectralProblem& problem, const AuxGrid& grid,
                                const KernelSpec& spec, const SolverParams& params);

/// Closed-form query counts with unit constants.
/// block_queries = kappa^2/(xi ||A||) log^{1+1/r}(kappa/(xi ||A|| eps)),
/// state_queries = kappa /(xi ||A||) log^{(1+1/r)/2}(same argument).
struct QueryCounts {
    double block_queries = 0.0;
    double state_queries = 0.0;
    bool best_case = false;
};
QueryCounts query_complexity(double kappa, double norm_a, double xi, double eps,
                             double r = 2.0);

/// State accuracy eps achieving classical accuracy delta under the
/// normalized-state accounting: solves eps xi = delta log^{1/4}(1/(eps xi)).
double state_epsilon_for_delta(double delta, double xi);

}  // namespace schrodls
