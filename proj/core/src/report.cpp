#include "schrodls/report.hpp"

#include <json.hpp>

namespace schrodls {
namespace {

using Json = nlohmann::ordered_json;

Json lcu_json(const LcuFigures& f) {
    Json j;
    j["alpha_l1"] = f.alpha_l1;
    j["zeta_norm"] = f.zeta_norm;
    j["xi"] = f.xi;
    j["P_w"] = f.P_w;
    j["P_x"] = f.P_x;
    j["P_r"] = f.P_r;
    j["g"] = f.g;
    j["block_queries"] = f.block_queries;
    j["state_queries"] = f.state_queries;
    j["best_case"] = f.best_case;
    return j;
}

std::string dump(const Json& j, int indent) {
    return indent < 0 ? j.dump() : j.dump(indent);
}

}  // namespace

std::string report_to_json(const SolveReport& report, int indent) {
    Json j;
    Json x_re = Json::array(), x_im = Json::array();
    for (Eigen::Index i = 0; i < report.x.size(); ++i) {
        x_re.push_back(report.x[i].real());
        x_im.push_back(report.x[i].imag());
    }
    j["x_re"] = std::move(x_re);
    j["x_im"] = std::move(x_im);
    j["residual"] = report.residual;
    if (report.oracle_gap)
        j["oracle_gap"] = *report.oracle_gap;
    else
        j["oracle_gap"] = nullptr;

    Json p;
    p["delta"] = report.params.delta;
    p["T"] = report.params.T;
    p["N_t"] = report.params.n_t;
    p["tau"] = report.params.tau;
    p["Q"] = report.params.Q;
    p["a"] = report.params.a;
    p["b"] = report.params.b;
    if (report.params.symmetric_domain()) {
        p["R"] = report.params.half_width_over_pi();
    } else {
        p["L"] = -report.params.a;
        p["R"] = report.params.b;
    }
    p["n_p"] = report.params.n_p;
    p["m"] = report.params.m;
    p["kernel"] = report.kernel.token();
    p["exact_integral"] = report.exact_integral;
    p["dilated"] = report.dilated;
    p["domain_margin_ok"] = report.params.domain_margin_ok;
    if (report.dilated) p["dilation_top_norm"] = report.dilation_top_norm;
    j["params"] = std::move(p);

    j["lcu"] = lcu_json(report.lcu);

    Json t;
    t["eig_ms"] = report.timings.eig_ms;
    t["modes_ms"] = report.timings.modes_ms;
    t["total_ms"] = report.timings.total_ms;
    j["timings"] = std::move(t);
    return dump(j, indent);
}

std::string lcu_to_json(const LcuFigures& figures, int indent) {
    return dump(lcu_json(figures), indent);
}

std::string error_to_json(const std::string& message, long line) {
    Json j;
    j["error"]["message"] = message;
    if (line >= 0) j["error"]["line"] = line;
    return j.dump();
}

}  // namespace schrodls
