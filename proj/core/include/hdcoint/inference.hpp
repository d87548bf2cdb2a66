#pragma once

#include "hdcoint/asymptotics.hpp"
#include "hdcoint/ensembles.hpp"
#include "hdcoint/spectra.hpp"

#include <string>

namespace hdcoint {

enum class StatisticKind {
  lr,           // sum ln(1 - lambda)
  pb,           // sum lambda
  hw,           // sum lambda / (1 - lambda)
  modified_lr,  // lr over the top r values of the modified procedure
};

std::string to_string(StatisticKind kind);

struct StatisticValue {
  double value = 0.0;
  // Some lambda in the window equals 1 (within 1e-12); LR is then -inf and
  // HW +inf rather than NaN.
  bool degenerate = false;
};

// Sum over i = r1 + 1 .. r2 of the statistic's summand, lambda descending.
StatisticValue spectral_statistic(const CanonicalSpectrum& s, StatisticKind kind, int r1, int r2);

// (lr - r c1) / (N^{-2/3} c2). With c2 < 0, a larger top eigenvalue gives a
// larger rescaled value.
double rescale_modified_lr(double lr, int r, int N, long T, int k);

enum class Decision { reject, fail_to_reject };

std::string to_string(Decision d);

struct TestReport {
  StatisticKind kind = StatisticKind::modified_lr;
  int r = 1;
  double raw = 0.0;
  bool degenerate = false;
  double rescaled = 0.0;
  double quantile_used = 0.0;
  double alpha = 0.95;
  Decision decision = Decision::fail_to_reject;
  bool has_p_value = false;
  double p_value = 0.0;
  double p_value_stderr = 0.0;
  int N = 0;
  long T = 0;
  int k = 0;
  std::string table_id;
};

// Rejects iff rescaled > quantile(r, alpha) (strict). The Monte Carlo p-value
// is filled in when the table carries partial-sum samples for r.
TestReport decide(double rescaled, int r, double alpha, const AiryQuantileTable& table);

// Modified-procedure statistic, rescaling and decision in one step.
TestReport modified_lr_test(const CanonicalSpectrum& s, int r, double alpha, const AiryQuantileTable& table);

}  // namespace hdcoint
