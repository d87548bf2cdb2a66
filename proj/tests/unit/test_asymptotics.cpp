#include <hdcoint/asymptotics.hpp>
#include <hdcoint/errors.hpp>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace hdcoint;

TEST(WachterParams, ClosedFormEdges) {
  const WachterParams w = wachter_params(2.0, 8.0);
  EXPECT_NEAR(w.lambda_plus, 0.5, 1e-15);
  EXPECT_NEAR(w.lambda_minus, 0.02, 1e-15);
  EXPECT_GT(w.c_plus, 0.0);
  EXPECT_GT(w.c_minus, 0.0);
}

TEST(WachterParams, UpperEdgeDecreasesInQ) {
  double prev = 1.0;
  for (double q = 1.1; q < 60.0; q += 0.7) {
    const WachterParams w = wachter_params(2.0, q);
    EXPECT_LT(w.lambda_plus, prev) << "q = " << q;
    EXPECT_GT(w.lambda_minus, 0.0);
    EXPECT_LT(w.lambda_minus, w.lambda_plus);
    EXPECT_LT(w.lambda_plus, 1.0);
    prev = w.lambda_plus;
  }
}

TEST(WachterParams, SupportCollapsesForLargeQ) {
  const WachterParams w = wachter_params(2.0, 1e4);
  EXPECT_LT(w.lambda_plus - w.lambda_minus, 0.02);
}

TEST(WachterParams, InvalidParametersRejected) {
  EXPECT_THROW(wachter_params(1.0, 5.0), DomainError);
  EXPECT_THROW(wachter_params(2.0, 0.5), DomainError);
}

TEST(WachterPdf, ZeroOutsideSupport) {
  const WachterParams w = wachter_params(2.0, 8.0);
  EXPECT_EQ(wachter_pdf(0.01, w), 0.0);
  EXPECT_EQ(wachter_pdf(0.6, w), 0.0);
  EXPECT_EQ(wachter_pdf(-1.0, w), 0.0);
  EXPECT_GT(wachter_pdf(0.2, w), 0.0);
}

TEST(WachterPdf, NormalizedOnParameterGrid) {
  // Independent double-exponential quadrature of the raw density.
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (double p : {1.5, 2.0, 5.0}) {
    for (double q : {2.0, 8.0, 20.0}) {
      const WachterParams w = wachter_params(p, q);
      auto f = [&](double x) { return wachter_pdf(x, w); };
      const double total = integrator.integrate(f, w.lambda_minus, w.lambda_plus);
      EXPECT_NEAR(total, 1.0, 1e-8) << "p = " << p << ", q = " << q;
      EXPECT_NEAR(wachter_integral([](double) { return 1.0; }, 0.0, 1.0, w), 1.0, 1e-10);
    }
  }
}

TEST(WachterPdf, SquareRootEdgeBehavior) {
  const WachterParams w = wachter_params(2.0, 8.0);
  const double eps = 1e-6;
  EXPECT_NEAR(wachter_pdf(w.lambda_plus - eps, w) / (w.c_plus / std::numbers::pi * std::sqrt(eps)), 1.0, 0.05);
  EXPECT_NEAR(wachter_pdf(w.lambda_minus + eps, w) / (w.c_minus / std::numbers::pi * std::sqrt(eps)), 1.0, 0.05);
}

TEST(WachterTail, BoundaryValues) {
  const WachterParams w = wachter_params(2.0, 8.0);
  EXPECT_EQ(wachter_tail(1.0, w), 0.0);
  EXPECT_EQ(wachter_tail(0.0, w), 1.0);
  EXPECT_NEAR(wachter_tail(0.5, w), 0.0, 1e-12);
  EXPECT_NEAR(wachter_tail(w.lambda_minus, w), 1.0, 1e-12);
  EXPECT_NEAR(wachter_cdf(0.3, w) + wachter_tail(0.3, w), 1.0, 1e-15);
}

TEST(WachterTail, InverseRoundTrip) {
  const WachterParams w = wachter_params(2.0, 4.0);
  double prev = w.lambda_plus;
  for (int i = 1; i <= 9; ++i) {
    const double rho = 0.1 * i;
    const double x = wachter_tail_inverse(rho, w);
    EXPECT_NEAR(wachter_tail(x, w), rho, 1e-8);
    EXPECT_LT(x, prev);
    prev = x;
  }
  EXPECT_EQ(wachter_tail_inverse(0.0, w), w.lambda_plus);
  EXPECT_EQ(wachter_tail_inverse(1.0, w), w.lambda_minus);
  EXPECT_THROW(wachter_tail_inverse(1.5, w), ParameterError);
}

TEST(StatisticLimits, PillaiBartlettClosedForm) {
  EXPECT_NEAR(corollary_limits(0.0, 1.0, 10.0, 2).pb, 0.2, 1e-6);
  EXPECT_NEAR(corollary_limits(0.0, 1.0, 12.0, 2).pb, 2.0 / 12.0, 1e-6);
}

TEST(StatisticLimits, PillaiBartlettClosedFormRandomGrid) {
  const double taus[] = {3.5, 4.2, 6.0, 7.7, 9.1, 12.5, 15.0, 20.0, 33.3, 48.0};
  const int ks[] = {1, 2, 1, 3, 4, 2, 5, 1, 6, 2};
  for (int i = 0; i < 10; ++i) {
    const double tau = taus[i];
    const int k = ks[i];
    EXPECT_NEAR(corollary_limits(0.0, 1.0, tau, k).pb, 2.0 / (tau + 2.0 - k), 1e-6) << "tau = " << tau;
  }
}

TEST(StatisticLimits, EmptyWindowAndFlags) {
  const CorollaryLimits e = corollary_limits(0.3, 0.3, 10.0, 2);
  EXPECT_EQ(e.lr, 0.0);
  EXPECT_EQ(e.pb, 0.0);
  EXPECT_EQ(e.hw, 0.0);
  const CorollaryLimits full = corollary_limits(0.0, 0.5, 10.0, 2);
  EXPECT_TRUE(full.lr_is_upper_bound);
  EXPECT_TRUE(full.hw_is_lower_bound);
  EXPECT_LT(full.lr, 0.0);
  EXPECT_GT(full.hw, full.pb);
  EXPECT_FALSE(corollary_limits(0.1, 0.5, 10.0, 2).lr_is_upper_bound);
  EXPECT_THROW(corollary_limits(0.0, 1.0, 3.0, 2), DomainError);
  EXPECT_THROW(corollary_limits(0.6, 0.5, 10.0, 2), ParameterError);
}

TEST(TestConstants, ClosedFormAtQ8) {
  const AsymptoticConstants c = test_constants(100, 1000, 2);
  EXPECT_NEAR(c.c1, std::log(0.5), 1e-12);
  EXPECT_NEAR(c.c2, -std::cbrt(25.0 / 6.0) * std::pow(10.0, -2.0 / 3.0), 1e-12);
  EXPECT_NEAR(c.c2, -0.34668, 1e-5);
}

TEST(TestConstants, NegativeOnGrid) {
  for (int N : {10, 50, 92}) {
    for (int k : {1, 2, 4}) {
      for (double ratio = k + 1.05; ratio <= 50.0; ratio += 1.3) {
        const long T = static_cast<long>(std::ceil(ratio * N));
        if (static_cast<double>(T) / N <= k + 1.0) continue;
        const AsymptoticConstants c = test_constants(N, T, k);
        EXPECT_LT(c.c1, 0.0);
        EXPECT_LT(c.c2, 0.0);
      }
    }
  }
}

TEST(TestConstants, DependOnlyOnQ) {
  const AsymptoticConstants a = test_constants(50, 500, 1);  // q = 9
  const AsymptoticConstants b = test_constants(50, 550, 2);
  const AsymptoticConstants c = test_constants(50, 600, 3);
  EXPECT_DOUBLE_EQ(a.c1, b.c1);
  EXPECT_DOUBLE_EQ(a.c1, c.c1);
  EXPECT_DOUBLE_EQ(a.c2, b.c2);
  EXPECT_DOUBLE_EQ(a.c2, c.c2);
}

TEST(TestConstants, RegimeViolationIsDomainError) {
  EXPECT_THROW(test_constants(100, 300, 2), DomainError);
  EXPECT_THROW(test_constants(100, 200, 1), DomainError);
  EXPECT_THROW(test_constants(0, 200, 1), ParameterError);
}

TEST(JacobiToWachter, CouplingParameters) {
  // J(N; N/2, (T - (k+1)N)/2) maps to p = 2, q = T/N - k.
  const auto [p, q] = jacobi_to_wachter(100, 50.0, 0.5 * (500 - 200));
  EXPECT_DOUBLE_EQ(p, 2.0);
  EXPECT_DOUBLE_EQ(q, 4.0);
}
