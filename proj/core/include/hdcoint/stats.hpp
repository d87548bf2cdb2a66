#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hdcoint {

// sup_x |F_n(x) - F(x)| for the empirical CDF of `sample`.
double ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);

// sup_x |F_a(x) - F_b(x)| between two empirical CDFs.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

// Linear-interpolation quantile of an ascending sample (type 7).
double quantile_sorted(std::span<const double> sorted, double alpha);

// Distribution-free standard error of the alpha-quantile: half the distance
// between the order statistics at alpha -/+ sqrt(alpha(1-alpha)/n).
double quantile_stderr_sorted(std::span<const double> sorted, double alpha);

double binomial_stderr(double p, long n);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> edges;  // bins + 1 entries
  std::vector<long> counts;
};

// Equal-width bins on [lo, hi]; the last bin is closed, values outside are
// not counted.
Histogram histogram(std::span<const double> values, double lo, double hi, int bins);

}  // namespace hdcoint
