#include "schrodls/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "schrodls/errors.hpp"

namespace schrodls {
namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// sum_{m=0}^{M-1} e^{i m theta} in closed form (Dirichlet kernel).
std::complex<double> geometric_phase_sum(double theta, long M) {
    const double half = std::sin(0.5 * theta);
    if (std::abs(half) < 1e-14) {
        const double ang = 0.5 * theta * static_cast<double>(M - 1);
        return static_cast<double>(M) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    const double ang = 0.5 * theta * static_cast<double>(M - 1);
    const double ratio = std::sin(0.5 * theta * static_cast<double>(M)) / half;
    return ratio * std::complex<double>(std::cos(ang), std::sin(ang));
}

Eigen::VectorXcd sampled_zeta(const AuxGrid& grid, const KernelSpec& spec) {
    Eigen::VectorXcd samples(grid.n_points);
    for (Eigen::Index k = 0; k < grid.n_points; ++k)
        samples[k] = kernel_zeta(spec, grid.points[static_cast<std::size_t>(k)]);
    return samples;
}

// Exact reconstruction phase phi_l(p_{k*}) = e^{2 pi i (l - N/2) k* / N};
// the integer reduction keeps the angle small.
std::complex<double> readout_phase(Eigen::Index l, Eigen::Index kstar, Eigen::Index n) {
    long long r = ((l - n / 2) * kstar) % n;
    if (r < 0) r += n;
    const double ang = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(ang), std::sin(ang)};
}

struct SliceAccumulation {
    Eigen::VectorXcd x;          // full slice vector x_T^d
    double w_int_norm = -1.0;    // ||(Phi (x) I) p(A) w~(0)||, grid-side; -1 when skipped
    double zeta_grid_norm = 0.0; // ||zeta|| over the grid
};

SliceAccumulation slice_accumulate(const SpectralProblem& problem, const AuxGrid& grid,
                                   const KernelSpec& spec, const SolverParams& params,
                                   TimeIntegration method) {
    if (!grid.zero_index)
        throw std::invalid_argument("integrate_slice: p = 0 is not a grid point");
    const Eigen::Index kstar = *grid.zero_index;
    const Eigen::Index n = problem.size();
    const Eigen::Index np = grid.n_points;

    const Eigen::VectorXcd samples = sampled_zeta(grid, spec);
    const Eigen::VectorXcd zt = forward_coeffs(grid, samples);
    const Eigen::VectorXcd bbar = problem.Vinv * problem.b;

    Eigen::VectorXd gauss_x, gauss_w;
    if (method == TimeIntegration::GaussQuadrature)
        std::tie(gauss_x, gauss_w) = gauss_rule(params.Q);

    // Gram matrix of the eigenbasis, needed for state norms when V is not
    // unitary. Skipped when it would dominate the runtime.
    const bool unit_frame = problem.hermitian;
    Eigen::MatrixXcd gram;
    bool track_w_int = true;
    if (!unit_frame) {
        if (static_cast<double>(np) * static_cast<double>(n) * static_cast<double>(n) > 4e9)
            track_w_int = false;
        else
            gram = problem.V.adjoint() * problem.V;
    }

    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd mode_vec(n);
    double w_int_sq = 0.0;
    for (Eigen::Index l = 0; l < np; ++l) {
        const double mu = grid.frequencies[static_cast<std::size_t>(l)];
        const std::complex<double> coeff = readout_phase(l, kstar, np) * zt[l];
        for (Eigen::Index j = 0; j < n; ++j) {
            const double omega = mu * problem.lambda[j];
            std::complex<double> s;
            if (method == TimeIntegration::ClosedForm) {
                s = phase_time_integral(omega, params.T);
            } else {
                std::complex<double> panel(0.0, 0.0);
                for (int q = 0; q < params.Q; ++q) {
                    const double ang = omega * gauss_x[q] * params.tau;
                    panel += gauss_w[q] * std::complex<double>(std::cos(ang), std::sin(ang));
                }
                s = params.tau * panel * geometric_phase_sum(omega * params.tau, params.n_t);
            }
            acc[j] += coeff * s;
            mode_vec[j] = s * bbar[j];
        }
        if (track_w_int) {
            const double zl2 = std::norm(zt[l]);
            if (unit_frame)
                w_int_sq += zl2 * mode_vec.squaredNorm();
            else
                w_int_sq += zl2 * std::real(mode_vec.dot(gram * mode_vec));
        }
    }

    SliceAccumulation out;
    out.x = problem.V * acc.cwiseProduct(bbar).eval();
    // grid-side norm: ||Phi z|| = sqrt(N_p) ||z|| per component
    out.w_int_norm = track_w_int ? std::sqrt(static_cast<double>(np) * w_int_sq) : -1.0;
    out.zeta_grid_norm = samples.norm();
    return out;
}

}  // namespace

SpectralProblem dilate(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b) {
    if (A.rows() != A.cols()) throw std::invalid_argument("dilate: matrix not square");
    if (A.rows() != b.size()) throw std::invalid_argument("dilate: dimension mismatch");
    const Eigen::Index n = A.rows();
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    big.topRightCorner(n, n) = A;
    big.bottomLeftCorner(n, n) = A.adjoint();
    Eigen::VectorXcd bb = Eigen::VectorXcd::Zero(2 * n);
    bb.head(n) = b;
    SpectralProblem p = SpectralProblem::hermitian_problem(big, bb);
    p.dilated = true;
    return p;
}

SolverParams select_params(const SpectralProblem& problem, const KernelSpec& spec,
                           double delta, const SolverOverrides& overrides) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("select_params: delta must lie in (0,1)");
    const double norm_a = problem.norm();
    const double min_eig = problem.min_abs_eig();
    if (!(min_eig > 1e-14 * norm_a))
        throw NumericalError("select_params: matrix is numerically singular");
    if (spec.requires_positive_spectrum() && !problem.positive_definite())
        throw std::invalid_argument("select_params: kernel '" + spec.token() +
                                    "' requires a positive definite spectrum");
    const double kappa = norm_a / min_eig;

    SolverParams p;
    p.delta = delta;

    p.T = overrides.T ? *overrides.T
                      : (kappa / norm_a) *
                            std::sqrt(2.0 * std::log(std::max(2.0 * kappa / (norm_a * delta),
                                                              std::exp(1.0))));
    if (!(p.T > 0.0)) throw std::invalid_argument("select_params: T must be positive");

    if (overrides.m) {
        p.m = *overrides.m;
    } else if (spec.variant == KernelVariant::ExponentialAbs) {
        p.m = 1;
    } else {
        const double num = 2.0 * std::log(std::max(p.T / delta, 1.0));
        const double den = std::log(std::max(std::log(1.0 / delta), std::exp(1.0)));
        p.m = std::max(2, static_cast<int>(std::ceil(num / den)));
        p.m = std::min(p.m, 48);
    }

    const double tail = kernel_tail_radius(spec, p.m, delta);
    if (overrides.domain_left || overrides.domain_right) {
        if (!(overrides.domain_left && overrides.domain_right))
            throw std::invalid_argument("select_params: asymmetric domain needs both endpoints");
        p.a = -*overrides.domain_left;
        p.b = *overrides.domain_right;
        if (!(p.a < 0.0 && p.b > 0.0))
            throw std::invalid_argument("select_params: domain must contain p = 0");
    } else if (overrides.R) {
        p.a = -kPi * *overrides.R;
        p.b = kPi * *overrides.R;
    } else {
        const double half = norm_a * p.T + tail;
        p.a = -half;
        p.b = half;
    }

    if (overrides.n_p) {
        p.n_p = *overrides.n_p;
        if (p.n_p < 1 || p.n_p > 24)
            throw std::invalid_argument("select_params: n_p must lie in [1, 24]");
    } else {
        double zfac = 1.0;
        if (spec.variant != KernelVariant::ExponentialAbs) {
            const double sem = kernel_seminorm(spec, p.m, -50.0, 50.0);
            zfac = std::pow(sem, 1.0 / static_cast<double>(p.m));
        }
        const double target =
            (p.b - p.a) * zfac * std::sqrt(std::max(std::log(1.0 / delta), 1.0));
        p.n_p = std::clamp(static_cast<int>(std::ceil(std::log2(std::max(target, 8.0)))), 3, 24);
    }

    const auto n_points = static_cast<double>(Eigen::Index(1) << p.n_p);

    // Align p = 0 with a grid point on asymmetric domains by shifting the
    // window left by less than one step (symmetric domains are aligned already).
    if (!p.symmetric_domain()) {
        const double dp = (p.b - p.a) / n_points;
        const double kst = std::ceil(-p.a / dp - 1e-12);
        p.a = -kst * dp;
        p.b = p.a + n_points * dp;
    }

    const double d_mu_norm = kPi * n_points / (p.b - p.a);
    if (overrides.tau) {
        if (!(*overrides.tau > 0.0))
            throw std::invalid_argument("select_params: tau must be positive");
        p.n_t = std::max(1, static_cast<int>(std::ceil(p.T / *overrides.tau)));
    } else {
        const double tau0 = 1.0 / (d_mu_norm * norm_a);
        p.n_t = std::max(1, static_cast<int>(std::ceil(p.T / tau0)));
    }
    p.tau = p.T / static_cast<double>(p.n_t);
    if (p.tau * d_mu_norm * norm_a > 1.0 + 1e-9)
        throw NumericalError("select_params: tau violates tau ||D_mu|| ||A|| <= 1");

    p.Q = overrides.Q ? *overrides.Q
                      : std::max(2, static_cast<int>(std::ceil(
                                        std::log(std::max(p.T / delta, std::exp(1.0))))));
    if (p.Q < 1 || p.Q > 64)
        throw std::invalid_argument("select_params: Q must lie in [1, 64]");

    const double need_left = norm_a * p.T + tail;
    const double need_right = problem.positive_definite() ? tail : need_left;
    p.domain_margin_ok = (-p.a + 1e-9 >= need_left) && (p.b + 1e-9 >= need_right);
    return p;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_rule(int Q) {
    if (Q < 1 || Q > 64) throw std::invalid_argument("gauss_rule: Q must lie in [1, 64]");
    Eigen::VectorXd x(Q), w(Q);
    for (int i = 0; i < (Q + 1) / 2; ++i) {
        double t = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(Q) + 0.5));
        double pd = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre P_Q(t) and derivative by recurrence
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= Q; ++k) {
                const double p2 =
                    ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            pd = Q == 1 ? 1.0 : static_cast<double>(Q) * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / pd;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        const double weight = 1.0 / ((1.0 - t * t) * pd * pd);  // already halved for [0,1]
        x[i] = 0.5 * (1.0 - t);
        x[Q - 1 - i] = 0.5 * (1.0 + t);
        w[i] = weight;
        w[Q - 1 - i] = weight;
    }
    if (Q % 2 == 1) {  // center node of odd rules sits exactly at 1/2
        x[Q / 2] = 0.5;
    }
    return {x, w};
}

Eigen::VectorXcd integrate_slice(const SpectralProblem& problem, const AuxGrid& grid,
                                 const KernelSpec& spec, const SolverParams& params,
                                 TimeIntegration method) {
    return slice_accumulate(problem, grid, spec, params, method).x;
}

Eigen::VectorXcd steady_state_source(const SpectralProblem& problem, const AuxGrid& grid,
                                     const KernelSpec& spec, double T) {
    if (!grid.zero_index)
        throw std::invalid_argument("steady_state_source: p = 0 is not a grid point");
    const Eigen::Index kstar = *grid.zero_index;
    const Eigen::Index n = problem.size();
    const Eigen::Index np = grid.n_points;

    const Eigen::VectorXcd zt = forward_coeffs(grid, sampled_zeta(grid, spec));
    const Eigen::VectorXcd bbar = problem.Vinv * problem.b;

    // variation of constants per mode, then back to the grid side by FFT
    Eigen::MatrixXcd bar(n, np);
    for (Eigen::Index l = 0; l < np; ++l) {
        const double mu = grid.frequencies[static_cast<std::size_t>(l)];
        for (Eigen::Index j = 0; j < n; ++j)
            bar(j, l) = zt[l] * phase_time_integral(mu * problem.lambda[j], T) * bbar[j];
    }
    const Eigen::MatrixXcd modes = problem.V * bar;

    Eigen::VectorXcd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXcd row = modes.row(i).transpose();
        out[i] = inverse_transform(grid, row)[kstar];
    }
    return out;
}

Eigen::VectorXcd ode_steady_state_oracle(const SpectralProblem& problem, int k, double t) {
    if (k != 1 && k != 2)
        throw std::invalid_argument("ode_steady_state_oracle: k must be 1 or 2");
    if (k == 1 && !problem.positive_definite())
        throw std::invalid_argument("ode_steady_state_oracle: k = 1 requires positive definite A");
    Eigen::VectorXcd bar = problem.Vinv * problem.b;
    for (Eigen::Index j = 0; j < problem.size(); ++j) {
        const double lam = problem.lambda[j];
        const double decay =
            k == 2 ? std::exp(-0.5 * (lam * t) * (lam * t)) : std::exp(-lam * t);
        bar[j] *= (1.0 - decay) / lam;
    }
    return problem.V * bar;
}

Eigen::VectorXcd lchs_integral_oracle(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b,
                                      const KernelSpec& spec, double T, double K,
                                      double tol) {
    if (A.rows() > 16)
        throw std::invalid_argument("lchs_integral_oracle: brute force capped at N <= 16");
    if (!spec.has_eta())
        throw UnsupportedOperation("lchs_integral_oracle: kernel does not expose eta");
    if (!(T > 0.0 && K > 0.0))
        throw std::invalid_argument("lchs_integral_oracle: T and K must be positive");

    auto [U, lam] = eig_hermitian(A);
    Eigen::VectorXcd bbar = U.adjoint() * b;

    const auto [gx, gw] = gauss_rule(12);
    const int refine = tol < 1e-8 ? 2 : 1;

    Eigen::VectorXcd vals(A.rows());
    for (Eigen::Index j = 0; j < A.rows(); ++j) {
        const double speed = std::abs(lam[j]);
        const int panels_s =
            std::clamp(static_cast<int>(std::ceil(4.0 + speed * T)), 8, 2048) * refine;
        const int panels_k =
            std::clamp(static_cast<int>(std::ceil(K * (1.0 + speed * T) / 3.0)), 16, 8192) *
            refine;
        const double hs = T / panels_s;
        const double hk = 2.0 * K / panels_k;

        // eta does not depend on s; tabulate it on the k-nodes once
        std::vector<double> knode(static_cast<std::size_t>(panels_k) * 12);
        std::vector<std::complex<double>> eta(knode.size());
        for (int pk = 0; pk < panels_k; ++pk)
            for (int q = 0; q < 12; ++q) {
                const double kk = -K + (pk + gx[q]) * hk;
                knode[static_cast<std::size_t>(pk) * 12 + q] = kk;
                eta[static_cast<std::size_t>(pk) * 12 + q] = kernel_eta(spec, kk);
            }

        std::complex<double> total(0.0, 0.0);
        for (int ps = 0; ps < panels_s; ++ps) {
            for (int qs = 0; qs < 12; ++qs) {
                const double s = (ps + gx[qs]) * hs;
                std::complex<double> inner(0.0, 0.0);
                for (std::size_t ik = 0; ik < knode.size(); ++ik) {
                    const double ang = -knode[ik] * lam[j] * s;
                    inner += gw[ik % 12] * eta[ik] *
                             std::complex<double>(std::cos(ang), std::sin(ang));
                }
                total += gw[qs] * hs * hk * inner;
            }
        }
        vals[j] = total * bbar[j];
    }
    return U * vals;
}

SolveReport solve_problem(const SpectralProblem& problem, double delta,
                          const SolveOptions& options) {
    const auto t_start = Clock::now();
    if (problem.b.norm() == 0.0) throw std::invalid_argument("solve: right-hand side is zero");

    SolveReport rep;
    rep.kernel = options.kernel;
    rep.exact_integral = options.exact_integral;
    rep.dilated = problem.dilated;
    rep.params = select_params(problem, options.kernel, delta, options.overrides);

    const AuxGrid grid = build_grid(rep.params.a, rep.params.b, rep.params.n_p);
    if (!grid.zero_index)
        throw NumericalError("solve: p = 0 missed the auxiliary grid");

    const auto t_modes = Clock::now();
    const auto method = options.exact_integral ? TimeIntegration::ClosedForm
                                               : TimeIntegration::GaussQuadrature;
    const SliceAccumulation acc =
        slice_accumulate(problem, grid, options.kernel, rep.params, method);
    rep.timings.modes_ms = ms_since(t_modes);

    Eigen::MatrixXcd a_orig;
    Eigen::VectorXcd b_orig;
    if (problem.dilated) {
        const Eigen::Index n = problem.size() / 2;
        rep.dilation_top_norm = acc.x.head(n).norm();
        rep.x = acc.x.tail(n);
        a_orig = problem.A.topRightCorner(n, n);
        b_orig = problem.b.head(n);
    } else {
        rep.x = acc.x;
        a_orig = problem.A;
        b_orig = problem.b;
    }

    const double b_norm = b_orig.norm();
    rep.residual = (a_orig * rep.x - b_orig).norm() / b_norm;

    double xi = rep.x.norm() / b_norm;
    if (options.compute_oracle_gap && a_orig.rows() <= options.oracle_gap_max_dim) {
        const Eigen::VectorXcd direct = a_orig.colPivHouseholderQr().solve(b_orig);
        rep.oracle_gap = (rep.x - direct).norm() / b_norm;
        xi = direct.norm() / b_norm;
    }

    rep.lcu.alpha_l1 = rep.params.T;
    rep.lcu.zeta_norm = acc.zeta_grid_norm;
    rep.lcu.xi = xi;
    const double w_star = acc.x.norm();
    const double denom = rep.lcu.alpha_l1 * rep.lcu.zeta_norm * b_norm;
    if (acc.w_int_norm >= 0.0) {
        rep.lcu.P_w = (acc.w_int_norm / denom) * (acc.w_int_norm / denom);
        rep.lcu.P_x = (w_star / acc.w_int_norm) * (w_star / acc.w_int_norm);
        rep.lcu.P_r = rep.lcu.P_w * rep.lcu.P_x;
    }
    rep.lcu.g = denom / w_star;
    const double eps_state = state_epsilon_for_delta(delta, xi);
    const QueryCounts qc = query_complexity(problem.kappa(), problem.norm(), xi, eps_state);
    rep.lcu.block_queries = qc.block_queries;
    rep.lcu.state_queries = qc.state_queries;
    rep.lcu.best_case = qc.best_case;

    rep.timings.total_ms = ms_since(t_start);
    return rep;
}

SolveReport solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, double delta,
                  const SolveOptions& options) {
    if (A.rows() != A.cols()) throw std::invalid_argument("solve: matrix not square");
    if (A.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");

    const auto t0 = Clock::now();
    const bool hermitian = (A - A.adjoint()).norm() <= 1e-12 * std::max(A.norm(), 1e-300);
    SpectralProblem problem = (hermitian && !options.force_dilation)
                                  ? SpectralProblem::hermitian_problem(A, b)
                                  : dilate(A, b);
    const double eig_ms = ms_since(t0);
    SolveReport rep = solve_problem(problem, delta, options);
    rep.timings.eig_ms = eig_ms;
    rep.timings.total_ms += eig_ms;
    return rep;
}

}  // namespace schrodls
