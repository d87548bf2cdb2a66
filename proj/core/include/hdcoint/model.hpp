#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hdcoint {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Low-rank parameter building blocks. Indices are 1-based, matching the
// E_ij / E_.j / I_rho notation used when describing experiments.
struct SparsePattern {
  enum class Kind {
    single_entry,      // scale * E_ij
    filled_column,     // scale * E_.j (ones in column j)
    leading_identity,  // scale * I_rho (first rho diagonal entries)
    scaled_identity,   // scale * 1_N
  };

  Kind kind = Kind::scaled_identity;
  int row = 1;
  int col = 1;
  int rank = 0;
  double scale = 1.0;

  static SparsePattern entry(int i, int j, double scale);
  static SparsePattern column(int j, double scale);
  static SparsePattern leading_identity(int rho, double scale);
  static SparsePattern identity(double scale);
};

Matrix realize_pattern(const SparsePattern& p, int N);
Matrix realize_sum(std::span<const SparsePattern> patterns, int N);

// Generator for the deterministic regressors D_t, t = 1..T. Rows are ordered
// constant, trend, then seasonal dummies for seasons 2..s (season of t is
// (t-1) mod s; the first season is dropped).
struct DeterministicTerms {
  bool constant = false;
  bool trend = false;
  int season_period = 0;

  static DeterministicTerms none() { return {}; }
  static DeterministicTerms intercept() { return {true, false, 0}; }

  int dimension() const;
  Vector at(long t) const;
  // d_D x (t_last - t_first + 1) matrix with columns D_{t_first}..D_{t_last}.
  Matrix columns(long t_first, long t_last) const;
};

// Parameters of the error-correction VAR(k)
//   dX_t = sum_i gamma_i dX_{t-i} + pi X_{t-k} + phi D_t + eps_t,
//   eps_t ~ N(0, noise_cov), started from fixed X_{1-k}, ..., X_0.
struct VarKSpec {
  int N = 0;
  int k = 1;
  int T = 0;
  std::vector<Matrix> gammas;  // k-1 matrices, N x N
  Matrix pi;                   // N x N
  DeterministicTerms det_terms;
  Matrix phi;        // N x d_D
  Matrix noise_cov;  // N x N, symmetric positive definite
  Matrix initial;    // N x k, columns X_{1-k}, ..., X_0

  // Pi = Gamma_i = 0, no deterministic terms, identity noise, zero start.
  static VarKSpec null_model(int N, int T, int k);

  void set_mean_drift(const Vector& mu);
  void validate() const;
};

// Observed panel: column t-1 of `data` is X_t (t = 1..T); `initial` holds
// pre-sample values with its last column equal to X_0.
struct PanelSeries {
  Matrix data;
  Matrix initial;
  std::vector<std::string> labels;

  int N() const { return static_cast<int>(data.rows()); }
  int T() const { return static_cast<int>(data.cols()); }
  int presample() const { return static_cast<int>(initial.cols()); }

  // X_t for t in [1 - presample(), T].
  Vector level(long t) const;
  // N x (presample + T) matrix [initial | data].
  Matrix full() const;

  void validate() const;
};

PanelSeries simulate(const VarKSpec& spec, std::uint64_t seed);

// N x T matrix with column t-1 equal to X_t - X_{t-1}.
Matrix difference(const PanelSeries& panel);

}  // namespace hdcoint
