#include "hdcoint/spectra.hpp"

#include "hdcoint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace hdcoint {

namespace {

constexpr double kEigenFloor = 1e-12;
constexpr double kRankTol = 1e-10;

// Inverse square root of a symmetric PSD matrix; eigenvalues below
// kEigenFloor * max are treated as zero (Moore-Penrose).
Matrix inv_sqrt_psd(const Matrix& s, bool& truncated) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s);
  const Vector& d = eig.eigenvalues();
  const double top = d.size() > 0 ? d.maxCoeff() : 0.0;
  Vector inv(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (top > 0.0 && d(i) > kEigenFloor * top) {
      inv(i) = 1.0 / std::sqrt(d(i));
    } else {
      inv(i) = 0.0;
      truncated = true;
    }
  }
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

void check_regime(int N, long effective_T, int regressors, int k) {
  if (effective_T - regressors < 2L * N) {
    throw DomainError("degenerate regime: " + std::to_string(effective_T) + " usable time points with " +
                      std::to_string(regressors) + " regressors leave fewer than 2N = " +
                      std::to_string(2 * N) + " residual degrees of freedom; T > (k+1)N is required (k = " +
                      std::to_string(k) + ")");
  }
}

}  // namespace

std::string to_string(Procedure p) { return p == Procedure::johansen ? "johansen" : "modified"; }

Matrix detrend(const PanelSeries& panel) {
  const int T = panel.T();
  if (T < 2) throw ParameterError("detrending needs T >= 2");
  if (panel.presample() < 1) throw ParameterError("detrending needs the pre-sample value X_0");
  const Vector x0 = panel.level(0);
  const Vector slope = (panel.data.col(T - 1) - x0) / static_cast<double>(T);
  Matrix out(panel.N(), T);
  out.col(0) = x0;
  for (int t = 2; t <= T; ++t) {
    out.col(t - 1) = panel.data.col(t - 2) - static_cast<double>(t - 1) * slope;
  }
  return out;
}

Matrix cyclic_lag(const Matrix& m, long i) {
  const long T = m.cols();
  if (T == 0) return m;
  const long shift = ((i % T) + T) % T;
  if (shift == 0) return m;
  Matrix out(m.rows(), T);
  out.rightCols(T - shift) = m.leftCols(T - shift);
  out.leftCols(shift) = m.rightCols(shift);
  return out;
}

RegressandSet johansen_regressands(const PanelSeries& panel, int k, const DeterministicTerms& det) {
  panel.validate();
  if (k < 1) throw ParameterError("VAR order k must be at least 1");
  const int N = panel.N();
  const int k0 = panel.presample();
  const long t_first = std::max({1L, static_cast<long>(k + 1 - k0), static_cast<long>(2 - k0)});
  const long t_last = panel.T();
  const long count = t_last - t_first + 1;
  if (count < 1) throw ParameterError("panel too short for the requested lag order");

  const Matrix full = panel.full();
  auto col_of = [k0](long t) { return static_cast<Eigen::Index>(t + k0 - 1); };
  auto diff = [&](long t) { return full.col(col_of(t)) - full.col(col_of(t - 1)); };

  RegressandSet z;
  z.z0.resize(N, count);
  z.zk.resize(N, count);
  z.z1.resize(static_cast<Eigen::Index>(N) * (k - 1) + det.dimension(), count);
  for (long c = 0; c < count; ++c) {
    const long t = t_first + c;
    z.z0.col(c) = diff(t);
    z.zk.col(c) = full.col(col_of(t - k));
    for (int i = 1; i < k; ++i) {
      z.z1.block(static_cast<Eigen::Index>(N) * (i - 1), c, N, 1) = diff(t - i);
    }
    if (det.dimension() > 0) {
      z.z1.block(static_cast<Eigen::Index>(N) * (k - 1), c, det.dimension(), 1) = det.at(t);
    }
  }
  return z;
}

RegressandSet modified_regressands(const PanelSeries& panel, int k) {
  panel.validate();
  if (k < 1) throw ParameterError("VAR order k must be at least 1");
  const int N = panel.N();
  const int T = panel.T();
  const Matrix dx = difference(panel);

  RegressandSet z;
  z.z0 = dx;
  z.zk = cyclic_lag(detrend(panel), k - 1);
  z.z1.resize(static_cast<Eigen::Index>(N) * (k - 1) + 1, T);
  for (int i = 1; i < k; ++i) {
    z.z1.middleRows(static_cast<Eigen::Index>(N) * (i - 1), N) = cyclic_lag(dx, i);
  }
  z.z1.row(z.z1.rows() - 1).setOnes();
  return z;
}

ResidualPair residualize(const RegressandSet& z) {
  const Eigen::Index T = z.z0.cols();
  if (z.zk.cols() != T || (z.z1.rows() > 0 && z.z1.cols() != T)) {
    throw ParameterError("regressands must share the same number of time points");
  }
  ResidualPair out{z.z0, z.zk, false};
  if (z.z1.rows() == 0) return out;

  Eigen::ColPivHouseholderQR<Matrix> qr(z.z1.transpose());
  qr.setThreshold(kRankTol);
  const Eigen::Index rank = qr.rank();
  out.rank_deficient = rank < z.z1.rows();
  if (rank == 0) return out;
  const Matrix q = Matrix(qr.householderQ()).leftCols(rank);
  out.r0 -= (z.z0 * q) * q.transpose();
  out.rk -= (z.zk * q) * q.transpose();
  return out;
}

CanonicalSpectrum canonical_eigs_from_moments(const Matrix& s00, const Matrix& s0k, const Matrix& skk) {
  bool truncated = false;
  const Matrix w0 = inv_sqrt_psd(s00, truncated);
  const Matrix wk = inv_sqrt_psd(skk, truncated);
  const Matrix w = w0 * s0k * wk;

  Eigen::BDCSVD<Matrix> svd(w);
  const Vector& sv = svd.singularValues();

  CanonicalSpectrum out;
  out.meta.N = static_cast<int>(s00.rows());
  out.values.resize(static_cast<std::size_t>(s00.rows()), 0.0);
  for (Eigen::Index i = 0; i < sv.size() && i < s00.rows(); ++i) {
    out.values[static_cast<std::size_t>(i)] = std::clamp(sv(i) * sv(i), 0.0, 1.0);
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  if (truncated) {
    out.meta.warnings.emplace_back("singular moment matrix: pseudo-inverse used, spectrum degenerate");
  }
  return out;
}

CanonicalSpectrum canonical_eigs(const ResidualPair& r) {
  if (r.r0.rows() != r.rk.rows() || r.r0.cols() != r.rk.cols()) {
    throw ParameterError("residual matrices must have equal shapes");
  }
  const Matrix s00 = r.r0 * r.r0.transpose();
  const Matrix s0k = r.r0 * r.rk.transpose();
  const Matrix skk = r.rk * r.rk.transpose();
  CanonicalSpectrum out = canonical_eigs_from_moments(s00, s0k, skk);
  out.meta.effective_T = r.r0.cols();
  if (r.rank_deficient) out.meta.warnings.emplace_back("rank-deficient regressors: pseudo-inverse projection");
  return out;
}

CanonicalSpectrum regression_spectrum(const RegressandSet& z) {
  const Eigen::Index N = z.z0.rows();
  const Eigen::Index T = z.z0.cols();
  const Eigen::Index m = z.z1.rows();
  if (z.zk.rows() != N || z.zk.cols() != T || (m > 0 && z.z1.cols() != T)) {
    throw ParameterError("regressands must share the same number of time points");
  }
  if (T < m + 2 * N) {
    return canonical_eigs(residualize(z));
  }

  Matrix stacked(T, m + 2 * N);
  if (m > 0) stacked.leftCols(m) = z.z1.transpose();
  stacked.middleCols(m, N) = z.z0.transpose();
  stacked.rightCols(N) = z.zk.transpose();

  Eigen::HouseholderQR<Matrix> qr(stacked);
  const Matrix& packed = qr.matrixQR();

  // Unpivoted QR exposes a dependent regressor as a (near) zero pivot.
  double scale = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) scale = std::max(scale, z.z1.row(j).norm());
  for (Eigen::Index j = 0; j < m; ++j) {
    if (std::abs(packed(j, j)) <= kRankTol * std::max(scale, 1.0)) {
      CanonicalSpectrum fallback = canonical_eigs(residualize(z));
      fallback.meta.effective_T = T;
      return fallback;
    }
  }

  const Matrix r22 = packed.block(m, m, 2 * N, 2 * N).triangularView<Eigen::Upper>();
  const Matrix s = r22.transpose() * r22;
  CanonicalSpectrum out =
      canonical_eigs_from_moments(s.topLeftCorner(N, N), s.topRightCorner(N, N), s.bottomRightCorner(N, N));
  out.meta.effective_T = T;
  return out;
}

CanonicalSpectrum johansen_spectrum(const PanelSeries& panel, int k, const DeterministicTerms& det) {
  RegressandSet z = johansen_regressands(panel, k, det);
  const long effective_T = z.z0.cols();
  const int m = static_cast<int>(z.z1.rows());
  check_regime(panel.N(), effective_T, m, k);
  CanonicalSpectrum out = regression_spectrum(z);
  out.meta.N = panel.N();
  out.meta.T = panel.T();
  out.meta.k = k;
  out.meta.effective_T = effective_T;
  out.meta.regressors = m;
  out.meta.procedure = Procedure::johansen;
  if (effective_T < panel.T()) {
    out.meta.warnings.emplace_back("pre-sample lags unavailable: first " + std::to_string(panel.T() - effective_T) +
                                   " time points dropped");
  }
  if (panel.T() <= static_cast<long>(k + 1) * panel.N()) {
    out.meta.warnings.emplace_back("T <= (k+1)N: outside the regime of the large-N asymptotics");
  }
  return out;
}

CanonicalSpectrum modified_spectrum(const PanelSeries& panel, int k) {
  RegressandSet z = modified_regressands(panel, k);
  const int m = static_cast<int>(z.z1.rows());
  check_regime(panel.N(), panel.T(), m, k);
  CanonicalSpectrum out = regression_spectrum(z);
  out.meta.N = panel.N();
  out.meta.T = panel.T();
  out.meta.k = k;
  out.meta.effective_T = panel.T();
  out.meta.regressors = m;
  out.meta.procedure = Procedure::modified;
  return out;
}

CanonicalSpectrum compute_spectrum(Procedure procedure, const PanelSeries& panel, int k,
                                   const DeterministicTerms& det) {
  return procedure == Procedure::johansen ? johansen_spectrum(panel, k, det) : modified_spectrum(panel, k);
}

}  // namespace hdcoint
