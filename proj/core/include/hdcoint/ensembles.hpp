#pragma once

#include "hdcoint/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hdcoint {

// Real Jacobi ensemble J(N; p, q): density det(M)^{p-1} det(1 - M)^{q-1}.
struct JacobiParams {
  int N = 1;
  double p = 1.0;
  double q = 1.0;
};

// Uniform on SO(n): QR of a Gaussian matrix with the R-diagonal sign fix,
// then one column flipped if the determinant came out -1.
Matrix haar_orthogonal(int n, std::uint64_t seed);

// Double-Wishart construction; requires 2p + N - 1 and 2q + N - 1 to be
// positive integers. Descending eigenvalues in (0, 1).
std::vector<double> sample_jacobi_spectrum(const JacobiParams& jp, std::uint64_t seed);

struct ProjectorModelSpec {
  int k = 1;
  int N = 1;
  int T_amb = 2;
  std::uint64_t seed = 0;
};

struct ProjectorModelSample {
  std::vector<double> values;  // N largest eigenvalues of P1 P2 P1, descending
  int resamples = 0;           // redraws after a numerically singular 1 + O
};

// Random projector model: O Haar on SO(T_amb), V the span of the last N
// coordinate vectors, P the projector orthogonal to O V, ..., O^{k-1} V,
// P1 onto P V and P2 onto P O^{k-1} (1 + O)^{-1} V.
ProjectorModelSample projector_model_spectrum(const ProjectorModelSpec& spec);

// Jacobi parameters whose eigenvalue law the projector model reproduces:
// p = N/2, q = (T_amb - (k+1)N + 1)/2.
JacobiParams projector_model_jacobi_params(int k, int N, int T_amb);

// Default number of leading rows of the tridiagonal model kept when only the
// top eigenvalues are needed; 0 passed as `window` selects it.
long default_tridiagonal_window(long n);

// Top r eigenvalues mu_1 > ... > mu_r of the beta = 1 tridiagonal model
// (diagonal N(0, 2), off-diagonal chi_{n-1}, ..., chi_1), returned as
// n^{1/6} (mu_i - 2 sqrt(n)). Only the first `window` rows are generated;
// the top eigenvectors live there, so the eigenvalues agree with the full
// matrix to rounding. window >= n uses the full matrix.
std::vector<double> goe_top_eigs(long n, int r, std::uint64_t seed, long window = 0);

// Top r eigenvalues of a symmetric tridiagonal matrix by Sturm-sequence
// bisection, descending. `offdiag` has size diag.size() - 1.
std::vector<double> tridiagonal_top_eigenvalues(const std::vector<double>& diag, const std::vector<double>& offdiag,
                                                int r);

struct AiryQuantileCell {
  int r = 1;
  double alpha = 0.0;
  double quantile = 0.0;
  double stderr = 0.0;
};

// Monte Carlo quantiles of the partial sums a_1 + ... + a_r of the Airy_1
// point process, with provenance. `partial_sums[r-1]` keeps the ascending
// samples when available (needed for Monte Carlo p-values).
struct AiryQuantileTable {
  std::vector<AiryQuantileCell> cells;
  std::vector<std::vector<double>> partial_sums;
  long n = 0;
  long window = 0;
  int reps = 0;
  std::uint64_t seed = 0;

  int r_max() const;
  std::optional<double> quantile(int r, double alpha) const;
  bool has_samples(int r) const;
  // Fraction of stored samples strictly above x.
  double exceedance(int r, double x) const;
  std::string id() const;
};

inline const std::vector<double> kDefaultAlphas = {0.90, 0.95, 0.975, 0.99};

AiryQuantileTable airy_sum_quantiles(int r_max, const std::vector<double>& alphas, long n, int reps,
                                     std::uint64_t seed, int threads = 0, long window = 0);

// CSV columns: r, alpha, quantile, stderr, n, reps, seed.
void write_quantile_csv(const AiryQuantileTable& table, std::ostream& out);
AiryQuantileTable read_quantile_csv(std::istream& in);

// One row per replication: s1, ..., s_rmax.
void write_partial_sums_csv(const AiryQuantileTable& table, std::ostream& out);
void read_partial_sums_csv(AiryQuantileTable& table, std::istream& in);

}  // namespace hdcoint
