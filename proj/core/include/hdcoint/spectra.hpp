#pragma once

#include "hdcoint/model.hpp"

#include <string>
#include <vector>

namespace hdcoint {

enum class Procedure {
  johansen,  // classical: lagged changes and deterministic terms, non-cyclic
  modified,  // detrended levels, cyclic lags, intercept only
};

std::string to_string(Procedure p);

// Row-oriented regression inputs: every matrix has one column per time point.
struct RegressandSet {
  Matrix z0;  // N x T_eff, changes
  Matrix zk;  // N x T_eff, (detrended) lagged levels
  Matrix z1;  // m x T_eff, regressors
};

struct ResidualPair {
  Matrix r0;
  Matrix rk;
  bool rank_deficient = false;  // Z1 Z1* was singular; projection used a pseudo-inverse
};

struct SpectrumMeta {
  int N = 0;
  int T = 0;             // panel length
  int k = 0;
  long effective_T = 0;  // number of time points entering the regressions
  int regressors = 0;    // rows of Z1
  Procedure procedure = Procedure::modified;
  std::vector<std::string> warnings;
};

// Squared sample canonical correlations, descending, clamped to [0, 1].
struct CanonicalSpectrum {
  std::vector<double> values;
  SpectrumMeta meta;

  double largest() const { return values.empty() ? 0.0 : values.front(); }
};

// X~_t = X_{t-1} - (t-1)/T (X_T - X_0), t = 1..T.
Matrix detrend(const PanelSeries& panel);

// Column t of the result is column (t - i) mod T of `m`.
Matrix cyclic_lag(const Matrix& m, long i);

RegressandSet johansen_regressands(const PanelSeries& panel, int k, const DeterministicTerms& det);
RegressandSet modified_regressands(const PanelSeries& panel, int k);

ResidualPair residualize(const RegressandSet& z);

// Whitening route: S00^{-1/2} S0k Skk^{-1/2}, squared singular values.
CanonicalSpectrum canonical_eigs(const ResidualPair& r);
CanonicalSpectrum canonical_eigs_from_moments(const Matrix& s00, const Matrix& s0k, const Matrix& skk);

// Residualizes and reduces to the canonical spectrum in one QR factorization
// of [Z1* Z0* Zk*]; falls back to residualize() when Z1 is rank deficient.
CanonicalSpectrum regression_spectrum(const RegressandSet& z);

CanonicalSpectrum johansen_spectrum(const PanelSeries& panel, int k, const DeterministicTerms& det);
CanonicalSpectrum modified_spectrum(const PanelSeries& panel, int k);

CanonicalSpectrum compute_spectrum(Procedure procedure, const PanelSeries& panel, int k,
                                   const DeterministicTerms& det = DeterministicTerms::intercept());

}  // namespace hdcoint
