#include "hdcoint/stats.hpp"

#include "hdcoint/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hdcoint {

double ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw ParameterError("KS statistic of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ParameterError("KS statistic of an empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double quantile_sorted(std::span<const double> sorted, double alpha) {
  if (sorted.empty()) throw ParameterError("quantile of an empty sample");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("quantile level must lie in [0, 1]");
  const double h = alpha * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double quantile_stderr_sorted(std::span<const double> sorted, double alpha) {
  const double n = static_cast<double>(sorted.size());
  const double delta = std::sqrt(alpha * (1.0 - alpha) / n);
  const double lo = quantile_sorted(sorted, std::clamp(alpha - delta, 0.0, 1.0));
  const double hi = quantile_sorted(sorted, std::clamp(alpha + delta, 0.0, 1.0));
  return 0.5 * (hi - lo);
}

double binomial_stderr(double p, long n) {
  if (n <= 0) return 0.0;
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

Histogram histogram(std::span<const double> values, double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw ParameterError("histogram needs bins >= 1 and hi > lo");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    if (!(v >= lo && v <= hi)) continue;
    auto b = static_cast<long>(std::floor((v - lo) / (hi - lo) * bins));
    b = std::min(b, static_cast<long>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

}  // namespace hdcoint
