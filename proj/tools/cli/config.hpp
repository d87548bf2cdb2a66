#pragma once

#include <hdcoint/model.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace hdcoint::cli {

// VAR(k) specification from JSON:
//   {"N": 100, "T": 500, "k": 2,
//    "gammas": [[{"kind": "entry", "i": 1, "j": 1, "scale": 0.95}]],
//    "pi": [{"kind": "column", "j": 1, "scale": -0.1}],
//    "deterministic": {"constant": true, "trend": false, "season_period": 0},
//    "mu": 1.0,
//    "noise_cov": "identity"}
// A parameter matrix is either a list of patterns (kinds entry, column,
// leading_identity, identity) or {"dense": [[...], ...]}. "mu" (a scalar or
// an N-vector) sets a constant drift; "phi" gives the loading matrix directly.
// "noise_cov" is "identity", a scalar variance or a dense matrix; "initial"
// is an N x k matrix of pre-sample levels.
VarKSpec parse_var_spec(const nlohmann::json& j);
VarKSpec load_var_spec(const std::string& path);

}  // namespace hdcoint::cli
