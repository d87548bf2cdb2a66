#include "hdcoint/asymptotics.hpp"

#include "hdcoint/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hdcoint {

WachterParams wachter_params(double p, double q) {
  if (!(p > 1.0) || !(q > 1.0)) {
    throw DomainError("Wachter parameters must exceed 1 (got p = " + std::to_string(p) +
                      ", q = " + std::to_string(q) + ")");
  }
  WachterParams w;
  w.p = p;
  w.q = q;
  const double s = p + q;
  const double a = std::sqrt(p * (s - 1.0));
  const double b = std::sqrt(q);
  w.lambda_minus = (a - b) * (a - b) / (s * s);
  w.lambda_plus = (a + b) * (a + b) / (s * s);
  const double gap = std::sqrt(w.lambda_plus - w.lambda_minus);
  w.c_minus = 0.5 * s * gap / (w.lambda_minus * (1.0 - w.lambda_minus));
  w.c_plus = 0.5 * s * gap / (w.lambda_plus * (1.0 - w.lambda_plus));
  return w;
}

double wachter_pdf(double x, const WachterParams& w) {
  if (x <= w.lambda_minus || x >= w.lambda_plus) return 0.0;
  return (w.p + w.q) / (2.0 * std::numbers::pi) * std::sqrt((x - w.lambda_minus) * (w.lambda_plus - x)) /
         (x * (1.0 - x));
}

double wachter_integral(const std::function<double(double)>& f, double a, double b, const WachterParams& w) {
  const double lo = std::clamp(a, w.lambda_minus, w.lambda_plus);
  const double hi = std::clamp(b, w.lambda_minus, w.lambda_plus);
  if (hi <= lo) return 0.0;
  const double width = w.lambda_plus - w.lambda_minus;
  auto angle = [&](double x) { return std::asin(std::sqrt(std::clamp((x - w.lambda_minus) / width, 0.0, 1.0))); };
  const double norm = (w.p + w.q) / (2.0 * std::numbers::pi) * 2.0 * width * width;
  auto integrand = [&](double theta) {
    const double sn = std::sin(theta);
    const double cs = std::cos(theta);
    const double x = w.lambda_minus + width * sn * sn;
    return f(x) * norm * sn * sn * cs * cs / (x * (1.0 - x));
  };
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(integrand, angle(lo), angle(hi), 8, 1e-12);
}

double wachter_tail(double x, const WachterParams& w) {
  if (x <= w.lambda_minus) return 1.0;
  if (x >= w.lambda_plus) return 0.0;
  return std::clamp(wachter_integral([](double) { return 1.0; }, x, w.lambda_plus, w), 0.0, 1.0);
}

double wachter_cdf(double x, const WachterParams& w) { return 1.0 - wachter_tail(x, w); }

double wachter_tail_inverse(double rho, const WachterParams& w) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw ParameterError("tail level must lie in [0, 1]");
  if (rho == 0.0) return w.lambda_plus;
  if (rho == 1.0) return w.lambda_minus;
  double lo = w.lambda_minus;
  double hi = w.lambda_plus;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (wachter_tail(mid, w) > rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CorollaryLimits corollary_limits(double rho1, double rho2, double tau, int k) {
  if (!(rho1 >= 0.0 && rho1 <= rho2 && rho2 <= 1.0)) {
    throw ParameterError("need 0 <= rho1 <= rho2 <= 1");
  }
  if (k < 1) throw ParameterError("VAR order k must be at least 1");
  if (!(tau > k + 1.0)) {
    throw DomainError("limit ratio tau = " + std::to_string(tau) + " must exceed k + 1 = " + std::to_string(k + 1));
  }
  const WachterParams w = wachter_params(2.0, tau - k);
  CorollaryLimits out;
  out.upper = wachter_tail_inverse(rho1, w);
  out.lower = wachter_tail_inverse(rho2, w);
  if (rho1 == rho2) {
    out.lower = out.upper;
  } else {
    out.lr = wachter_integral([](double x) { return std::log1p(-x); }, out.lower, out.upper, w);
    out.pb = wachter_integral([](double x) { return x; }, out.lower, out.upper, w);
    out.hw = wachter_integral([](double x) { return x / (1.0 - x); }, out.lower, out.upper, w);
  }
  out.lr_is_upper_bound = rho1 == 0.0;
  out.hw_is_lower_bound = rho1 == 0.0;
  return out;
}

AsymptoticConstants test_constants(int N, long T, int k) {
  if (N < 1 || T < 1 || k < 1) throw ParameterError("N, T and k must be positive");
  const double ratio = static_cast<double>(T) / N;
  if (!(ratio > k + 1.0)) {
    throw DomainError("T/N = " + std::to_string(ratio) + " must exceed k + 1 = " + std::to_string(k + 1) +
                      " (T > (k+1)N is required)");
  }
  AsymptoticConstants c;
  c.N = N;
  c.T = T;
  c.k = k;
  c.wachter = wachter_params(2.0, ratio - k);
  const double lp = c.wachter.lambda_plus;
  const double lm = c.wachter.lambda_minus;
  c.c1 = std::log1p(-lp);
  c.c2 = -std::cbrt(4.0 * lp * lp) / (std::cbrt(1.0 - lp) * std::cbrt(lp - lm)) /
         std::cbrt((c.wachter.p + c.wachter.q) * (c.wachter.p + c.wachter.q));
  return c;
}

std::pair<double, double> jacobi_to_wachter(int N, double p, double q) {
  if (N < 1) throw ParameterError("N must be positive");
  return {2.0 * p / N + 1.0, 2.0 * q / N + 1.0};
}

}  // namespace hdcoint
