// Command line front end: solve systems from Matrix Market files, reproduce
// the built-in demo experiments, run parameter sweeps, and evaluate resource
// estimates. Emits JSON (reports, estimates, errors) and CSV (tables).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "schrodls/bpx.hpp"
#include "schrodls/errors.hpp"
#include "schrodls/matrix_market.hpp"
#include "schrodls/mesh.hpp"
#include "schrodls/poisson.hpp"
#include "schrodls/report.hpp"
#include "schrodls/solver.hpp"

namespace {

using Json = nlohmann::ordered_json;
using schrodls::KernelSpec;
using schrodls::SolveOptions;
using schrodls::SolveReport;

constexpr double kPi = 3.14159265358979323846;

struct CommonOpts {
    double delta = 1e-8;
    std::string kernel = "fourier-odd";
    double T = 0.0, R = 0.0, tau = 0.0;  // 0 means "not set"
    int np = 0, Q = 0;
    std::string out;
    std::string config;
    unsigned long long seed = 0;
    bool exact_integral = false;
    bool timings = false;
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--delta", o.delta, "target accuracy delta in (0,1)");
    cmd->add_option("--kernel", o.kernel, "kernel: fourier-odd | gaussian | exp-abs");
    cmd->add_option("--T", o.T, "evolution time override");
    cmd->add_option("--R", o.R, "p-domain half-width override (domain [-pi R, pi R])");
    cmd->add_option("--np", o.np, "log2 of the p-grid size override");
    cmd->add_option("--Q", o.Q, "Gauss nodes per time interval override");
    cmd->add_option("--tau", o.tau, "time step override");
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--seed", o.seed, "seed for randomized fixtures");
    cmd->add_flag("--exact-integral", o.exact_integral,
                  "use the exact per-mode time integral instead of quadrature");
    cmd->add_flag("--timings", o.timings, "fill the runtime column in CSV output");
    cmd->add_option("--config", o.config, "JSON config file overriding flags");
}

// The config file wins over flags.
void apply_config(CommonOpts& o, std::string* matrix, std::string* rhs) {
    if (o.config.empty()) return;
    std::ifstream in(o.config);
    if (!in) throw schrodls::InputError("cannot open config file '" + o.config + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw schrodls::InputError(std::string("config parse failure: ") + e.what());
    }
    if (j.contains("delta")) o.delta = j["delta"].get<double>();
    if (j.contains("kernel")) o.kernel = j["kernel"].get<std::string>();
    if (j.contains("T")) o.T = j["T"].get<double>();
    if (j.contains("R")) o.R = j["R"].get<double>();
    if (j.contains("np")) o.np = j["np"].get<int>();
    if (j.contains("Q")) o.Q = j["Q"].get<int>();
    if (j.contains("tau")) o.tau = j["tau"].get<double>();
    if (j.contains("out")) o.out = j["out"].get<std::string>();
    if (j.contains("seed")) o.seed = j["seed"].get<unsigned long long>();
    if (j.contains("exact_integral")) o.exact_integral = j["exact_integral"].get<bool>();
    if (j.contains("timings")) o.timings = j["timings"].get<bool>();
    if (matrix && j.contains("matrix")) *matrix = j["matrix"].get<std::string>();
    if (rhs && j.contains("rhs")) *rhs = j["rhs"].get<std::string>();
}

SolveOptions to_solve_options(const CommonOpts& o) {
    SolveOptions opts;
    opts.kernel = KernelSpec::from_token(o.kernel);
    if (o.T > 0.0) opts.overrides.T = o.T;
    if (o.R > 0.0) opts.overrides.R = o.R;
    if (o.tau > 0.0) opts.overrides.tau = o.tau;
    if (o.np > 0) opts.overrides.n_p = o.np;
    if (o.Q > 0) opts.overrides.Q = o.Q;
    opts.exact_integral = o.exact_integral;
    return opts;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw schrodls::InputError("cannot open output file '" + out_path + "'");
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

struct CsvTable {
    std::ostringstream body;
    bool timings = false;
    CsvTable(bool with_timings) : timings(with_timings) {
        body << "level_or_T,l2_error,h1_error_or_blank,residual,runtime_ms\n";
    }
    void row(const std::string& tag, double l2, std::optional<double> h1, double residual,
             double runtime_ms) {
        body << tag << ',' << fmt(l2) << ',' << (h1 ? fmt(*h1) : std::string()) << ','
             << fmt(residual) << ',';
        if (timings) body << static_cast<long long>(runtime_ms * 1000.0) / 1000.0;
        body << '\n';
    }
    std::string str() const { return body.str(); }
};

// 3x3 upper-triangular fixture with known solution (1, 0, 1).
void ns3x3_fixture(Eigen::MatrixXcd& a, Eigen::VectorXcd& b) {
    a = Eigen::MatrixXcd::Zero(3, 3);
    a << 1, 1, 0, 0, 1, 1, 0, 0, 1;
    b = Eigen::VectorXcd::Ones(3);
}

Eigen::MatrixXcd random_hermitian(int n, double kappa, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = std::complex<double>(g(rng), g(rng));
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::VectorXd lam(n);
    std::uniform_real_distribution<double> u(1.0, kappa);
    std::bernoulli_distribution sign(0.5);
    lam[0] = 1.0;
    lam[1] = kappa;
    for (int i = 2; i < n; ++i) lam[i] = u(rng);
    for (int i = 0; i < n; ++i)
        if (sign(rng)) lam[i] = -lam[i];
    return q * lam.asDiagonal() * q.adjoint();
}

int cmd_solve(const CommonOpts& common, const std::string& matrix_path,
              const std::string& rhs_path) {
    const Eigen::MatrixXcd a = schrodls::read_matrix_market(matrix_path);
    const Eigen::VectorXcd b = schrodls::read_vector_text(rhs_path);
    if (a.rows() != b.size())
        throw schrodls::InputError("matrix/vector dimension mismatch: " +
                                   std::to_string(a.rows()) + " vs " +
                                   std::to_string(b.size()));
    const SolveReport rep = schrodls::solve(a, b, common.delta, to_solve_options(common));
    emit(common.out, schrodls::report_to_json(rep));
    return 0;
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

int demo_ns3x3(const CommonOpts& common) {
    Eigen::MatrixXcd a;
    Eigen::VectorXcd b;
    ns3x3_fixture(a, b);
    Eigen::VectorXcd exact(3);
    exact << 1, 0, 1;

    CsvTable csv(common.timings);
    for (double T : {10.0, 15.0}) {
        CommonOpts o = common;
        o.T = T;
        if (o.R <= 0.0) o.R = 15.0;
        if (o.np <= 0) o.np = 9;
        if (o.Q <= 0) o.Q = 8;
        const double t0 = now_ms();
        const SolveReport rep = schrodls::solve(a, b, o.delta, to_solve_options(o));
        const double err = (rep.x - exact).norm();
        char tag[16];
        std::snprintf(tag, sizeof tag, "%g", T);
        csv.row(tag, err, std::nullopt, rep.residual, now_ms() - t0);
    }
    emit(common.out, csv.str());
    return 0;
}

int demo_poisson1d(const CommonOpts& common) {
    CsvTable csv(common.timings);
    auto f = [](double x) { return -std::exp(-x); };
    auto exact = [](double x) { return std::exp(-x); };
    for (int M : {10, 20, 40}) {
        const schrodls::DiscreteSystem sys = schrodls::poisson1d_fd(M, f, 1.0, std::exp(-1.0));
        CommonOpts o = common;
        if (o.delta == 1e-8) o.delta = 1e-9;  // keep solver error below the FD error
        const double t0 = now_ms();
        const SolveReport rep = schrodls::solve(sys.A.cast<std::complex<double>>(),
                                                sys.b.cast<std::complex<double>>(), o.delta,
                                                to_solve_options(o));
        const double err = schrodls::fd_max_nodal_error(sys, rep.x.real(), exact);
        csv.row(std::to_string(M), err, std::nullopt, rep.residual, now_ms() - t0);
    }
    emit(common.out, csv.str());
    return 0;
}

schrodls::ExactSolution poisson2d_exact() {
    return {
        [](double x, double y) { return y * y * std::sin(kPi * x); },
        [](double x, double y) { return kPi * y * y * std::cos(kPi * x); },
        [](double x, double y) { return 2.0 * y * std::sin(kPi * x); },
    };
}

double poisson2d_rhs(double x, double y) {
    return (kPi * kPi * y * y - 2.0) * std::sin(kPi * x);
}

int demo_poisson2d(const CommonOpts& common) {
    const schrodls::MeshHierarchy hier = schrodls::build_hierarchy(3);
    const schrodls::ExactSolution exact = poisson2d_exact();
    CsvTable csv(common.timings);
    for (int level = 0; level <= 3; ++level) {
        const schrodls::DiscreteSystem sys =
            schrodls::poisson2d_p1(hier, level, poisson2d_rhs, exact.value);
        CommonOpts o = common;
        // defaults per the reference experiments; the finest mesh needs the
        // larger evolution window
        if (o.T <= 0.0) o.T = level < 3 ? 20.0 : 50.0;
        if (o.R <= 0.0) o.R = level < 3 ? 15.0 : 35.0;
        if (o.np <= 0) o.np = level < 3 ? 9 : 11;
        const double t0 = now_ms();
        const SolveReport rep = schrodls::solve(sys.A.cast<std::complex<double>>(),
                                                sys.b.cast<std::complex<double>>(), o.delta,
                                                to_solve_options(o));
        const schrodls::FemErrors errs = schrodls::fem_error_norms(sys, rep.x.real(), exact);
        csv.row(std::to_string(level + 1), errs.l2, errs.h1, rep.residual, now_ms() - t0);
    }
    emit(common.out, csv.str());
    return 0;
}

int demo_poisson2d_bpx(const CommonOpts& common) {
    const schrodls::ExactSolution exact = poisson2d_exact();
    CsvTable csv(common.timings);
    for (int level = 0; level <= 2; ++level) {
        const schrodls::MeshHierarchy hier = schrodls::build_hierarchy(level);
        const schrodls::DiscreteSystem sys =
            schrodls::poisson2d_p1(hier, level, poisson2d_rhs, exact.value);
        const Eigen::MatrixXd b_op = schrodls::bpx(hier);
        const schrodls::PreconditionedSystem pre =
            schrodls::preconditioned_problem(sys, b_op, common.delta);

        const double T = common.T > 0.0 ? common.T : 15.0;
        const double tail = -std::log(common.delta);
        schrodls::SpectralProblem problem = schrodls::SpectralProblem::from_similarity(
            pre.W.cast<std::complex<double>>(), pre.c.cast<std::complex<double>>(),
            pre.V.cast<std::complex<double>>(), pre.Vinv.cast<std::complex<double>>(),
            pre.lambda);

        SolveOptions opts = to_solve_options(common);
        opts.kernel = KernelSpec::from_token("exp-abs");
        opts.overrides.T = T;
        // certified transport margin; the kappa_pm formulas are reported but
        // the domain must clear |lambda|_max T on the left
        opts.overrides.domain_left =
            std::max(pre.lambda.maxCoeff() * T + tail + 1.0, pre.L_suggested);
        opts.overrides.domain_right = tail + 1.0;
        if (!opts.overrides.n_p) opts.overrides.n_p = 11;

        const double t0 = now_ms();
        const SolveReport rep = schrodls::solve_problem(problem, common.delta, opts);
        const schrodls::FemErrors errs = schrodls::fem_error_norms(sys, rep.x.real(), exact);
        csv.row(std::to_string(level + 1), errs.l2, errs.h1, rep.residual, now_ms() - t0);
    }
    emit(common.out, csv.str());
    return 0;
}

int cmd_demo(const CommonOpts& common, const std::string& name) {
    if (name == "ns3x3") return demo_ns3x3(common);
    if (name == "poisson1d") return demo_poisson1d(common);
    if (name == "poisson2d") return demo_poisson2d(common);
    if (name == "poisson2d-bpx") return demo_poisson2d_bpx(common);
    throw schrodls::InputError("unknown demo '" + name +
                               "' (expected ns3x3 | poisson1d | poisson2d | poisson2d-bpx)");
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream s(csv);
    std::string tok;
    while (std::getline(s, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

int cmd_sweep(const CommonOpts& common, const std::string& matrix_path,
              const std::string& rhs_path, const std::string& fixture,
              const std::string& t_list, const std::string& np_list,
              const std::string& q_list, const std::string& delta_list) {
    Eigen::MatrixXcd a;
    Eigen::VectorXcd b;
    if (!matrix_path.empty()) {
        a = schrodls::read_matrix_market(matrix_path);
        b = schrodls::read_vector_text(rhs_path);
    } else if (fixture == "ns3x3") {
        ns3x3_fixture(a, b);
    } else if (fixture == "random-hermitian") {
        std::mt19937_64 rng(common.seed);
        a = random_hermitian(8, 20.0, rng);
        b = Eigen::VectorXcd::Ones(8);
    } else {
        throw schrodls::InputError("sweep needs --matrix/--rhs or a known --fixture");
    }

    const std::vector<double> ts = t_list.empty() ? std::vector<double>{0.0} : parse_list(t_list);
    const std::vector<double> nps =
        np_list.empty() ? std::vector<double>{0.0} : parse_list(np_list);
    const std::vector<double> qs = q_list.empty() ? std::vector<double>{0.0} : parse_list(q_list);
    const std::vector<double> deltas =
        delta_list.empty() ? std::vector<double>{common.delta} : parse_list(delta_list);
    if (ts.empty() || nps.empty() || qs.empty() || deltas.empty())
        throw schrodls::InputError("sweep grid is empty");

    std::ostringstream csv;
    csv << "T,n_p,Q,delta,oracle_gap,residual,runtime_ms\n";
    for (double delta : deltas)
        for (double t : ts)
            for (double np : nps)
                for (double q : qs) {
                    CommonOpts o = common;
                    o.delta = delta;
                    if (t > 0.0) o.T = t;
                    if (np > 0.0) o.np = static_cast<int>(np);
                    if (q > 0.0) o.Q = static_cast<int>(q);
                    const double t0 = now_ms();
                    const SolveReport rep = schrodls::solve(a, b, delta, to_solve_options(o));
                    csv << (t > 0.0 ? fmt(t) : fmt(rep.params.T)) << ','
                        << (np > 0.0 ? static_cast<int>(np) : rep.params.n_p) << ','
                        << (q > 0.0 ? static_cast<int>(q) : rep.params.Q) << ','
                        << fmt(delta) << ','
                        << (rep.oracle_gap ? fmt(*rep.oracle_gap) : std::string()) << ','
                        << fmt(rep.residual) << ',';
                    if (common.timings) csv << now_ms() - t0;
                    csv << '\n';
                }
    emit(common.out, csv.str());
    return 0;
}

int cmd_estimate(const CommonOpts& common, double kappa, double norm_a, double xi, double eps,
                 const std::string& matrix_path, const std::string& rhs_path) {
    if (!matrix_path.empty()) {
        const Eigen::MatrixXcd a = schrodls::read_matrix_market(matrix_path);
        const Eigen::VectorXcd b = rhs_path.empty()
                                       ? Eigen::VectorXcd(Eigen::VectorXcd::Ones(a.rows()))
                                       : schrodls::read_vector_text(rhs_path);
        const auto [u, lam] = schrodls::eig_hermitian(a);
        kappa = lam.cwiseAbs().maxCoeff() / lam.cwiseAbs().minCoeff();
        norm_a = lam.cwiseAbs().maxCoeff();
        const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(b);
        xi = x.norm() / b.norm();
    }
    if (!(kappa > 0.0 && norm_a > 0.0 && xi > 0.0))
        throw schrodls::InputError("estimate needs --kappa/--norm/--xi or --matrix");
    const schrodls::QueryCounts qc = schrodls::query_complexity(kappa, norm_a, xi, eps);

    Json j;
    j["kappa"] = kappa;
    j["norm_A"] = norm_a;
    j["xi"] = xi;
    j["eps"] = eps;
    j["block_queries"] = qc.block_queries;
    j["state_queries"] = qc.state_queries;
    j["best_case"] = qc.best_case;
    emit(common.out, j.dump(2));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classical emulator and resource estimator for a "
                 "Schrodingerization-form linear systems solver"};
    app.require_subcommand(1);

    CommonOpts solve_opts, demo_opts, sweep_opts, est_opts;
    std::string matrix_path, rhs_path, demo_name;
    std::string sweep_matrix, sweep_rhs, sweep_fixture = "ns3x3";
    std::string t_list, np_list, q_list, delta_list;
    double est_kappa = 0.0, est_norm = 1.0, est_xi = 0.0, est_eps = 1e-2;
    std::string est_matrix, est_rhs;

    CLI::App* solve = app.add_subcommand("solve", "solve A x = b from files");
    add_common_options(solve, solve_opts);
    solve->add_option("--matrix", matrix_path, "Matrix Market file for A")->required();
    solve->add_option("--rhs", rhs_path, "whitespace-separated text file for b")->required();

    CLI::App* demo = app.add_subcommand("demo", "reproduce a built-in experiment");
    add_common_options(demo, demo_opts);
    demo->add_option("name", demo_name, "ns3x3 | poisson1d | poisson2d | poisson2d-bpx")
        ->required();

    CLI::App* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep");
    add_common_options(sweep, sweep_opts);
    sweep->add_option("--matrix", sweep_matrix, "Matrix Market file for A");
    sweep->add_option("--rhs", sweep_rhs, "right-hand side file");
    sweep->add_option("--fixture", sweep_fixture, "ns3x3 | random-hermitian");
    sweep->add_option("--T-values", t_list, "comma-separated T values");
    sweep->add_option("--np-values", np_list, "comma-separated log2 grid sizes");
    sweep->add_option("--Q-values", q_list, "comma-separated Gauss orders");
    sweep->add_option("--delta-values", delta_list, "comma-separated accuracies");

    CLI::App* est = app.add_subcommand("estimate", "evaluate query-count formulas");
    add_common_options(est, est_opts);
    est->add_option("--kappa", est_kappa, "condition number");
    est->add_option("--norm", est_norm, "spectral norm of A");
    est->add_option("--xi", est_xi, "||A^{-1}|b>||");
    est->add_option("--eps", est_eps, "target state accuracy in (0,1)");
    est->add_option("--matrix", est_matrix, "compute kappa/norm/xi from a matrix file");
    est->add_option("--rhs", est_rhs, "right-hand side for xi (default: ones)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) {
            apply_config(solve_opts, &matrix_path, &rhs_path);
            return cmd_solve(solve_opts, matrix_path, rhs_path);
        }
        if (demo->parsed()) {
            apply_config(demo_opts, nullptr, nullptr);
            return cmd_demo(demo_opts, demo_name);
        }
        if (sweep->parsed()) {
            apply_config(sweep_opts, &sweep_matrix, &sweep_rhs);
            return cmd_sweep(sweep_opts, sweep_matrix, sweep_rhs, sweep_fixture, t_list,
                             np_list, q_list, delta_list);
        }
        if (est->parsed()) {
            apply_config(est_opts, &est_matrix, &est_rhs);
            return cmd_estimate(est_opts, est_kappa, est_norm, est_xi, est_eps, est_matrix,
                                est_rhs);
        }
    } catch (const schrodls::ParseError& e) {
        std::cerr << schrodls::error_to_json(e.what(), e.line()) << '\n';
        return 2;
    } catch (const schrodls::InputError& e) {
        std::cerr << schrodls::error_to_json(e.what()) << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << schrodls::error_to_json(e.what()) << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << schrodls::error_to_json(e.what()) << '\n';
        return 1;
    }
    return 0;
}
