#include "config.hpp"

#include <hdcoint/errors.hpp>

#include <fstream>

namespace hdcoint::cli {

namespace {

using nlohmann::json;

Matrix dense_matrix(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw ParameterError(what + ": expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParameterError(what + ": row " + std::to_string(i + 1) + " must have " + std::to_string(cols) +
                           " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw ParameterError(what + ": non-numeric entry");
      m(i, c) = v.get<double>();
    }
  }
  return m;
}

SparsePattern parse_pattern(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("kind")) throw ParameterError(what + ": pattern needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  const double scale = j.value("scale", 1.0);
  if (kind == "entry") return SparsePattern::entry(j.at("i").get<int>(), j.at("j").get<int>(), scale);
  if (kind == "column") return SparsePattern::column(j.at("j").get<int>(), scale);
  if (kind == "leading_identity") return SparsePattern::leading_identity(j.at("rank").get<int>(), scale);
  if (kind == "identity") return SparsePattern::identity(scale);
  throw ParameterError(what + ": unknown pattern kind '" + kind + "'");
}

Matrix parameter_matrix(const json& j, int N, const std::string& what) {
  if (j.is_object() && j.contains("dense")) return dense_matrix(j.at("dense"), N, N, what);
  if (!j.is_array()) throw ParameterError(what + ": expected a list of patterns or {\"dense\": ...}");
  std::vector<SparsePattern> patterns;
  for (const auto& p : j) patterns.push_back(parse_pattern(p, what));
  return realize_sum(patterns, N);
}

}  // namespace

VarKSpec parse_var_spec(const json& j) {
  try {
    const int N = j.at("N").get<int>();
    const int T = j.at("T").get<int>();
    const int k = j.value("k", 1);
    if (N < 1 || T < 1 || k < 1) throw ParameterError("N, T and k must be positive");
    VarKSpec spec = VarKSpec::null_model(N, T, k);
    if (j.contains("gammas")) {
      const json& g = j.at("gammas");
      if (!g.is_array() || static_cast<int>(g.size()) > k - 1) {
        throw ParameterError("\"gammas\" must be a list of at most k - 1 matrices");
      }
      for (std::size_t i = 0; i < g.size(); ++i) {
        spec.gammas[i] = parameter_matrix(g[i], N, "gammas[" + std::to_string(i + 1) + "]");
      }
    }
    if (j.contains("pi")) spec.pi = parameter_matrix(j.at("pi"), N, "pi");
    if (j.contains("deterministic")) {
      const json& d = j.at("deterministic");
      spec.det_terms.constant = d.value("constant", false);
      spec.det_terms.trend = d.value("trend", false);
      spec.det_terms.season_period = d.value("season_period", 0);
      spec.phi = Matrix::Zero(N, spec.det_terms.dimension());
    }
    if (j.contains("mu")) {
      if (j.contains("deterministic") || j.contains("phi")) {
        throw ParameterError("give either \"mu\" or \"deterministic\" with \"phi\", not both");
      }
      const json& mu = j.at("mu");
      Vector v = Vector::Zero(N);
      if (mu.is_number()) {
        v.setConstant(mu.get<double>());
      } else {
        if (!mu.is_array() || static_cast<int>(mu.size()) != N) throw ParameterError("\"mu\" must have N entries");
        for (int i = 0; i < N; ++i) v(i) = mu[static_cast<std::size_t>(i)].get<double>();
      }
      spec.set_mean_drift(v);
    }
    if (j.contains("phi")) spec.phi = dense_matrix(j.at("phi"), N, spec.det_terms.dimension(), "phi");
    if (j.contains("noise_cov")) {
      const json& c = j.at("noise_cov");
      if (c.is_string()) {
        if (c.get<std::string>() != "identity") throw ParameterError("noise_cov must be \"identity\"");
      } else if (c.is_number()) {
        spec.noise_cov = c.get<double>() * Matrix::Identity(N, N);
      } else {
        spec.noise_cov = dense_matrix(c, N, N, "noise_cov");
      }
    }
    if (j.contains("initial")) spec.initial = dense_matrix(j.at("initial"), N, k, "initial");
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("invalid model configuration: ") + e.what());
  }
}

VarKSpec load_var_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open configuration file '" + path + "'");
  try {
    return parse_var_spec(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("cannot parse '" + path + "': " + e.what());
  }
}

}  // namespace hdcoint::cli
