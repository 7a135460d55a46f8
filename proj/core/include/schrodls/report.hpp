#pragma once

#include <string>

#include "schrodls/lcu.hpp"
#include "schrodls/solver.hpp"

namespace schrodls {

/// SolveReport as a JSON document with stable field names:
/// x_re, x_im, residual, oracle_gap, params{...}, lcu{...}, timings{...}.
/// `indent` < 0 emits a compact single line.
std::string report_to_json(const SolveReport& report, int indent = 2);

/// LcuFigures alone (used by the resource estimator).
std::string lcu_to_json(const LcuFigures& figures, int indent = 2);

/// Machine-readable error payload: {"error": {"message": ..., "line": ...}}.
std::string error_to_json(const std::string& message, long line = -1);

}  // namespace schrodls
