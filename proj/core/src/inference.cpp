#include "hdcoint/inference.hpp"

#include "hdcoint/errors.hpp"
#include "hdcoint/stats.hpp"

#include <cmath>
#include <limits>

namespace hdcoint {

std::string to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::lr: return "LR";
    case StatisticKind::pb: return "PB";
    case StatisticKind::hw: return "HW";
    case StatisticKind::modified_lr: return "modified_LR";
  }
  return "unknown";
}

std::string to_string(Decision d) { return d == Decision::reject ? "reject" : "fail_to_reject"; }

StatisticValue spectral_statistic(const CanonicalSpectrum& s, StatisticKind kind, int r1, int r2) {
  const int n = static_cast<int>(s.values.size());
  if (!(r1 >= 0 && r1 < r2 && r2 <= n)) {
    throw ParameterError("need 0 <= r1 < r2 <= N (got r1 = " + std::to_string(r1) + ", r2 = " + std::to_string(r2) +
                         ", N = " + std::to_string(n) + ")");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  StatisticValue out;
  for (int i = r1; i < r2; ++i) {
    const double l = s.values[static_cast<std::size_t>(i)];
    const bool unit = l >= 1.0 - 1e-12;
    switch (kind) {
      case StatisticKind::pb:
        out.value += l;
        break;
      case StatisticKind::lr:
      case StatisticKind::modified_lr:
        if (unit) {
          out.degenerate = true;
        } else {
          out.value += std::log1p(-l);
        }
        break;
      case StatisticKind::hw:
        if (unit) {
          out.degenerate = true;
        } else {
          out.value += l / (1.0 - l);
        }
        break;
    }
  }
  if (out.degenerate) out.value = kind == StatisticKind::hw ? inf : -inf;
  return out;
}

double rescale_modified_lr(double lr, int r, int N, long T, int k) {
  if (r < 1) throw ParameterError("r must be at least 1");
  const AsymptoticConstants c = test_constants(N, T, k);
  return (lr - r * c.c1) / (std::pow(static_cast<double>(N), -2.0 / 3.0) * c.c2);
}

TestReport decide(double rescaled, int r, double alpha, const AiryQuantileTable& table) {
  const auto q = table.quantile(r, alpha);
  if (!q) {
    throw ParameterError("quantile table has no entry for r = " + std::to_string(r) + ", alpha = " +
                         std::to_string(alpha) + "; generate one with airy_sum_quantiles (CLI: quantiles)");
  }
  TestReport rep;
  rep.r = r;
  rep.alpha = alpha;
  rep.rescaled = rescaled;
  rep.quantile_used = *q;
  rep.decision = rescaled > *q ? Decision::reject : Decision::fail_to_reject;
  rep.table_id = table.id();
  if (table.has_samples(r)) {
    rep.has_p_value = true;
    rep.p_value = table.exceedance(r, rescaled);
    rep.p_value_stderr = binomial_stderr(rep.p_value, static_cast<long>(table.partial_sums[static_cast<std::size_t>(r - 1)].size()));
  }
  return rep;
}

TestReport modified_lr_test(const CanonicalSpectrum& s, int r, double alpha, const AiryQuantileTable& table) {
  const StatisticValue lr = spectral_statistic(s, StatisticKind::modified_lr, 0, r);
  const double rescaled = lr.degenerate ? std::numeric_limits<double>::infinity()
                                        : rescale_modified_lr(lr.value, r, s.meta.N, s.meta.T, s.meta.k);
  TestReport rep = decide(rescaled, r, alpha, table);
  rep.kind = StatisticKind::modified_lr;
  rep.raw = lr.value;
  rep.degenerate = lr.degenerate;
  rep.N = s.meta.N;
  rep.T = s.meta.T;
  rep.k = s.meta.k;
  return rep;
}

}  // namespace hdcoint
