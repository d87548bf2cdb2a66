#include "hdcoint/model.hpp"

#include "hdcoint/errors.hpp"
#include "hdcoint/random.hpp"

#include <cmath>
#include <string>

namespace hdcoint {

SparsePattern SparsePattern::entry(int i, int j, double scale) {
  SparsePattern p;
  p.kind = Kind::single_entry;
  p.row = i;
  p.col = j;
  p.scale = scale;
  return p;
}

SparsePattern SparsePattern::column(int j, double scale) {
  SparsePattern p;
  p.kind = Kind::filled_column;
  p.col = j;
  p.scale = scale;
  return p;
}

SparsePattern SparsePattern::leading_identity(int rho, double scale) {
  SparsePattern p;
  p.kind = Kind::leading_identity;
  p.rank = rho;
  p.scale = scale;
  return p;
}

SparsePattern SparsePattern::identity(double scale) {
  SparsePattern p;
  p.kind = Kind::scaled_identity;
  p.scale = scale;
  return p;
}

namespace {

void check_index(int idx, int N, const char* what) {
  if (idx < 1 || idx > N) {
    throw ParameterError(std::string(what) + " index " + std::to_string(idx) + " outside [1, " +
                         std::to_string(N) + "]");
  }
}

bool is_identity(const Matrix& m) { return m.isIdentity(0.0); }

}  // namespace

Matrix realize_pattern(const SparsePattern& p, int N) {
  if (N < 1) throw ParameterError("pattern dimension must be positive");
  Matrix m = Matrix::Zero(N, N);
  switch (p.kind) {
    case SparsePattern::Kind::single_entry:
      check_index(p.row, N, "row");
      check_index(p.col, N, "column");
      m(p.row - 1, p.col - 1) = p.scale;
      break;
    case SparsePattern::Kind::filled_column:
      check_index(p.col, N, "column");
      m.col(p.col - 1).setConstant(p.scale);
      break;
    case SparsePattern::Kind::leading_identity:
      if (p.rank < 0 || p.rank > N) {
        throw ParameterError("identity block rank " + std::to_string(p.rank) + " outside [0, " +
                             std::to_string(N) + "]");
      }
      for (int i = 0; i < p.rank; ++i) m(i, i) = p.scale;
      break;
    case SparsePattern::Kind::scaled_identity:
      m.diagonal().setConstant(p.scale);
      break;
  }
  return m;
}

Matrix realize_sum(std::span<const SparsePattern> patterns, int N) {
  Matrix m = Matrix::Zero(N, N);
  for (const auto& p : patterns) m += realize_pattern(p, N);
  return m;
}

int DeterministicTerms::dimension() const {
  return (constant ? 1 : 0) + (trend ? 1 : 0) + (season_period > 1 ? season_period - 1 : 0);
}

Vector DeterministicTerms::at(long t) const {
  Vector d = Vector::Zero(dimension());
  int row = 0;
  if (constant) d(row++) = 1.0;
  if (trend) d(row++) = static_cast<double>(t);
  if (season_period > 1) {
    const long s = season_period;
    const long season = ((t - 1) % s + s) % s;
    if (season > 0) d(row + season - 1) = 1.0;
  }
  return d;
}

Matrix DeterministicTerms::columns(long t_first, long t_last) const {
  const long count = t_last - t_first + 1;
  Matrix m(dimension(), count < 0 ? 0 : count);
  for (long c = 0; c < count; ++c) m.col(c) = at(t_first + c);
  return m;
}

VarKSpec VarKSpec::null_model(int N, int T, int k) {
  VarKSpec s;
  s.N = N;
  s.T = T;
  s.k = k;
  s.gammas.assign(static_cast<std::size_t>(std::max(k - 1, 0)), Matrix::Zero(N, N));
  s.pi = Matrix::Zero(N, N);
  s.phi = Matrix::Zero(N, 0);
  s.noise_cov = Matrix::Identity(N, N);
  s.initial = Matrix::Zero(N, k);
  return s;
}

void VarKSpec::set_mean_drift(const Vector& mu) {
  det_terms = DeterministicTerms::intercept();
  phi = mu;
}

void VarKSpec::validate() const {
  if (N < 1) throw ParameterError("N must be positive");
  if (k < 1) throw ParameterError("VAR order k must be at least 1");
  if (T < 1) throw ParameterError("T must be at least 1");
  if (static_cast<int>(gammas.size()) != k - 1) {
    throw ParameterError("expected " + std::to_string(k - 1) + " lag matrices, got " +
                         std::to_string(gammas.size()));
  }
  for (const auto& g : gammas) {
    if (g.rows() != N || g.cols() != N) throw ParameterError("lag matrix must be N x N");
  }
  if (pi.rows() != N || pi.cols() != N) throw ParameterError("Pi must be N x N");
  if (phi.rows() != N || phi.cols() != det_terms.dimension()) {
    throw ParameterError("Phi must be N x d_D with d_D = " + std::to_string(det_terms.dimension()));
  }
  if (noise_cov.rows() != N || noise_cov.cols() != N) throw ParameterError("noise covariance must be N x N");
  if (!noise_cov.isApprox(noise_cov.transpose(), 1e-12)) {
    throw ParameterError("noise covariance must be symmetric");
  }
  if (initial.rows() != N || initial.cols() != k) throw ParameterError("initial values must be N x k");
  if (!noise_cov.allFinite() || !pi.allFinite() || !phi.allFinite() || !initial.allFinite()) {
    throw ParameterError("parameters must be finite");
  }
}

Vector PanelSeries::level(long t) const {
  const long offset = presample() - 1;
  const long c = t + offset;
  if (c < 0 || c >= presample() + T()) {
    throw ParameterError("time index " + std::to_string(t) + " outside panel");
  }
  return c < presample() ? Vector(initial.col(c)) : Vector(data.col(c - presample()));
}

Matrix PanelSeries::full() const {
  Matrix m(N(), presample() + T());
  m << initial, data;
  return m;
}

void PanelSeries::validate() const {
  if (data.rows() < 1 || data.cols() < 1) throw ParameterError("panel must be non-empty");
  if (initial.cols() > 0 && initial.rows() != data.rows()) {
    throw ParameterError("initial values must have N rows");
  }
  if (!data.allFinite() || !initial.allFinite()) throw ParameterError("panel contains NaN or Inf");
  if (!labels.empty() && static_cast<int>(labels.size()) != N()) {
    throw ParameterError("label count does not match N");
  }
}

PanelSeries simulate(const VarKSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int N = spec.N;
  const int k = spec.k;

  Eigen::LLT<Matrix> llt(spec.noise_cov);
  if (llt.info() != Eigen::Success) {
    throw ParameterError("noise covariance is not positive definite");
  }
  const Matrix chol = llt.matrixL();
  const bool white = is_identity(spec.noise_cov);

  std::vector<int> active_lags;
  for (int i = 0; i < k - 1; ++i) {
    if (!spec.gammas[static_cast<std::size_t>(i)].isZero(0.0)) active_lags.push_back(i + 1);
  }
  const bool has_pi = !spec.pi.isZero(0.0);
  const bool has_det = spec.det_terms.dimension() > 0 && !spec.phi.isZero(0.0);

  // Column c of `history` is X_{c-k+1}.
  Matrix history(N, k + spec.T);
  history.leftCols(k) = spec.initial;
  auto col_of = [k](long t) { return static_cast<Eigen::Index>(t + k - 1); };

  Vector dx(N);
  for (long t = 1; t <= spec.T; ++t) {
    Rng rng(derive_seed(seed, Stream::noise, static_cast<std::uint64_t>(t)));
    Vector z = standard_normal_matrix(rng, N, 1);
    if (white) {
      dx = z;
    } else {
      dx.noalias() = chol * z;
    }
    for (int i : active_lags) {
      // dX_{t-i} = X_{t-i} - X_{t-i-1}
      dx.noalias() += spec.gammas[static_cast<std::size_t>(i - 1)] *
                      (history.col(col_of(t - i)) - history.col(col_of(t - i - 1)));
    }
    if (has_pi) dx.noalias() += spec.pi * history.col(col_of(t - k));
    if (has_det) dx.noalias() += spec.phi * spec.det_terms.at(t);
    history.col(col_of(t)) = history.col(col_of(t - 1)) + dx;
  }

  PanelSeries panel;
  panel.initial = spec.initial;
  panel.data = history.rightCols(spec.T);
  return panel;
}

Matrix difference(const PanelSeries& panel) {
  if (panel.presample() < 1) {
    throw ParameterError("differencing needs the pre-sample value X_0");
  }
  if (panel.initial.rows() != panel.data.rows()) {
    throw ParameterError("initial values must have N rows");
  }
  const int T = panel.T();
  Matrix d(panel.N(), T);
  if (T == 0) return d;
  d.col(0) = panel.data.col(0) - panel.initial.col(panel.presample() - 1);
  if (T > 1) d.rightCols(T - 1) = panel.data.rightCols(T - 1) - panel.data.leftCols(T - 1);
  return d;
}

}  // namespace hdcoint
