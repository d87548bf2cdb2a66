#pragma once

#include <functional>
#include <utility>

namespace hdcoint {

// Wachter law mu_{p,q} on [lambda_minus, lambda_plus] together with the edge
// constants c_pm governing the square-root vanishing of its density.
struct WachterParams {
  double p = 0.0;
  double q = 0.0;
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double c_minus = 0.0;
  double c_plus = 0.0;
};

WachterParams wachter_params(double p, double q);

double wachter_pdf(double x, const WachterParams& w);

// F(x) = mu((x, 1]); decreasing with F(lambda_minus) = 1, F(lambda_plus) = 0.
double wachter_tail(double x, const WachterParams& w);
double wachter_cdf(double x, const WachterParams& w);

// Smallest x with F(x) <= rho, by bisection to 1e-12.
double wachter_tail_inverse(double rho, const WachterParams& w);

// Integral of f against mu_{p,q} over [a, b] (clipped to the support). The
// substitution x = lambda_minus + (lambda_plus - lambda_minus) sin^2(theta)
// turns the square-root edges into a smooth periodic integrand.
double wachter_integral(const std::function<double(double)>& f, double a, double b, const WachterParams& w);

struct CorollaryLimits {
  double lr = 0.0;  // limit of N^{-1} sum ln(1 - lambda_i)
  double pb = 0.0;  // limit of N^{-1} sum lambda_i
  double hw = 0.0;  // limit of N^{-1} sum lambda_i / (1 - lambda_i)
  double lower = 0.0;  // F^{-1}(rho2)
  double upper = 0.0;  // F^{-1}(rho1)
  // With rho1 = 0 only one-sided statements hold: the LR statistic is
  // asymptotically bounded above by `lr`, the HW statistic below by `hw`.
  bool lr_is_upper_bound = false;
  bool hw_is_lower_bound = false;
};

// First-order limits of the LR, Pillai-Bartlett and Hotelling-Lawley
// statistics over the eigenvalue window (rho1 N, rho2 N], with T/N -> tau.
CorollaryLimits corollary_limits(double rho1, double rho2, double tau, int k);

// Centering and scaling for the modified LR statistic (p = 2, q = T/N - k).
struct AsymptoticConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  WachterParams wachter;
  int N = 0;
  long T = 0;
  int k = 0;
};

AsymptoticConstants test_constants(int N, long T, int k);

// Jacobi J(N; p, q) exponents to Wachter parameters: p/N = (P - 1)/2,
// q/N = (Q - 1)/2.
std::pair<double, double> jacobi_to_wachter(int N, double p, double q);

}  // namespace hdcoint
