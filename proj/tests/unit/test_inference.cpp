#include <hdcoint/errors.hpp>
#include <hdcoint/inference.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace hdcoint;

namespace {

CanonicalSpectrum spectrum(std::vector<double> values, int N, int T, int k) {
  CanonicalSpectrum s;
  s.values = std::move(values);
  s.meta.N = N;
  s.meta.T = T;
  s.meta.k = k;
  return s;
}

// Cells from the r = 1 and r = 2 rows of the reference table, with a small
// synthetic sample for p-values.
AiryQuantileTable reference_table(bool with_samples) {
  AiryQuantileTable t;
  t.cells = {{1, 0.90, 0.44, 0.0}, {1, 0.95, 0.97, 0.0}, {1, 0.975, 1.45, 0.0}, {1, 0.99, 2.04, 0.0},
             {2, 0.90, -1.91, 0.0}, {2, 0.95, -1.13, 0.0}, {2, 0.975, -0.40, 0.0}, {2, 0.99, 0.40, 0.0}};
  t.n = 10000;
  t.reps = 20;
  t.seed = 1;
  if (with_samples) {
    std::vector<double> s1, s2;
    for (int i = 0; i < 20; ++i) {
      s1.push_back(-3.0 + 0.25 * i);
      s2.push_back(-6.0 + 0.4 * i);
    }
    t.partial_sums = {s1, s2};
  }
  return t;
}

}  // namespace

TEST(SpectralStatistic, ZeroSpectrum) {
  const CanonicalSpectrum s = spectrum({0.0, 0.0, 0.0}, 3, 100, 1);
  for (auto kind : {StatisticKind::lr, StatisticKind::pb, StatisticKind::hw}) {
    const StatisticValue v = spectral_statistic(s, kind, 0, 3);
    EXPECT_EQ(v.value, 0.0);
    EXPECT_FALSE(v.degenerate);
  }
}

TEST(SpectralStatistic, HandArithmetic) {
  const CanonicalSpectrum s = spectrum({0.5, 0.2}, 2, 100, 1);
  EXPECT_NEAR(spectral_statistic(s, StatisticKind::pb, 0, 2).value, 0.7, 1e-15);
  EXPECT_NEAR(spectral_statistic(s, StatisticKind::lr, 0, 2).value, std::log(0.5) + std::log(0.8), 1e-15);
  EXPECT_NEAR(spectral_statistic(s, StatisticKind::lr, 0, 2).value, -0.9163, 1e-4);
  EXPECT_NEAR(spectral_statistic(s, StatisticKind::hw, 0, 2).value, 1.25, 1e-15);
  EXPECT_NEAR(spectral_statistic(s, StatisticKind::pb, 1, 2).value, 0.2, 1e-15);
}

TEST(SpectralStatistic, UnitEigenvalueGivesSignedInfinity) {
  const CanonicalSpectrum s = spectrum({1.0, 0.3}, 2, 100, 1);
  const StatisticValue lr = spectral_statistic(s, StatisticKind::lr, 0, 2);
  const StatisticValue hw = spectral_statistic(s, StatisticKind::hw, 0, 2);
  EXPECT_TRUE(lr.degenerate);
  EXPECT_TRUE(std::isinf(lr.value) && lr.value < 0);
  EXPECT_TRUE(hw.degenerate);
  EXPECT_TRUE(std::isinf(hw.value) && hw.value > 0);
  EXPECT_FALSE(std::isnan(spectral_statistic(s, StatisticKind::pb, 0, 2).value));
  EXPECT_FALSE(spectral_statistic(s, StatisticKind::lr, 1, 2).degenerate);
}

TEST(SpectralStatistic, WindowValidated) {
  const CanonicalSpectrum s = spectrum({0.5, 0.2}, 2, 100, 1);
  EXPECT_THROW(spectral_statistic(s, StatisticKind::lr, 1, 1), ParameterError);
  EXPECT_THROW(spectral_statistic(s, StatisticKind::lr, 0, 3), ParameterError);
  EXPECT_THROW(spectral_statistic(s, StatisticKind::lr, -1, 1), ParameterError);
}

TEST(SpectralStatistic, PermutationInvariantWithinWindow) {
  const CanonicalSpectrum a = spectrum({0.6, 0.4, 0.1}, 3, 100, 1);
  const CanonicalSpectrum b = spectrum({0.4, 0.6, 0.1}, 3, 100, 1);
  for (auto kind : {StatisticKind::lr, StatisticKind::pb, StatisticKind::hw}) {
    EXPECT_DOUBLE_EQ(spectral_statistic(a, kind, 0, 2).value, spectral_statistic(b, kind, 0, 2).value);
  }
}

TEST(Rescale, ExactCenteringAndArithmetic) {
  const AsymptoticConstants c = test_constants(100, 1000, 2);
  EXPECT_NEAR(rescale_modified_lr(c.c1, 1, 100, 1000, 2), 0.0, 1e-14);
  EXPECT_NEAR(rescale_modified_lr(3.0 * c.c1, 3, 100, 1000, 2), 0.0, 1e-13);
  EXPECT_NEAR(rescale_modified_lr(c.c1 - 0.01, 1, 100, 1000, 2), 0.6214, 1e-3);
  EXPECT_NEAR(rescale_modified_lr(c.c1 - 0.01, 1, 100, 1000, 2), 0.01 * std::pow(100.0, 2.0 / 3.0) / (-c.c2), 1e-12);
}

TEST(Rescale, LargerTopEigenvalueIncreasesValue) {
  double prev = -1e300;
  for (double l = 0.3; l < 0.9; l += 0.05) {
    const double v = rescale_modified_lr(std::log1p(-l), 1, 100, 1000, 2);
    EXPECT_GT(v, prev);
    prev = v;
  }
  EXPECT_THROW(rescale_modified_lr(-1.0, 1, 100, 300, 2), DomainError);
}

TEST(Decide, ReferenceExamples) {
  const AiryQuantileTable t = reference_table(false);
  const TestReport big = decide(5.0, 1, 0.95, t);
  EXPECT_EQ(big.decision, Decision::reject);
  EXPECT_DOUBLE_EQ(big.quantile_used, 0.97);
  EXPECT_FALSE(big.has_p_value);
  EXPECT_EQ(decide(-0.28, 1, 0.90, t).decision, Decision::fail_to_reject);
  EXPECT_EQ(decide(-0.28, 1, 0.95, t).decision, Decision::fail_to_reject);
  EXPECT_EQ(decide(0.97, 1, 0.95, t).decision, Decision::fail_to_reject);
  EXPECT_EQ(decide(std::nextafter(0.97, 1.0), 1, 0.95, t).decision, Decision::reject);
  EXPECT_EQ(to_string(Decision::reject), "reject");
  EXPECT_EQ(to_string(Decision::fail_to_reject), "fail_to_reject");
}

TEST(Decide, MissingEntryNamesGenerator) {
  const AiryQuantileTable t = reference_table(false);
  try {
    decide(0.0, 3, 0.95, t);
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("airy_sum_quantiles"), std::string::npos);
  }
  EXPECT_THROW(decide(0.0, 1, 0.8, t), ParameterError);
}

TEST(Decide, PValueConsistentWithDecision) {
  const AiryQuantileTable t = reference_table(true);
  const TestReport rep = decide(1.6, 1, 0.95, t);
  ASSERT_TRUE(rep.has_p_value);
  // Samples -3, -2.75, ..., 1.75: only the last lies above 1.6.
  EXPECT_DOUBLE_EQ(rep.p_value, 1.0 / 20.0);
  EXPECT_NEAR(rep.p_value_stderr, std::sqrt(0.05 * 0.95 / 20.0), 1e-15);
  EXPECT_EQ(rep.decision, Decision::reject);
  EXPECT_LT(rep.p_value, 1.0 - rep.alpha + 1e-12);
  const TestReport none = decide(10.0, 2, 0.99, t);
  EXPECT_EQ(none.p_value, 0.0);
  EXPECT_EQ(none.decision, Decision::reject);
}

TEST(ModifiedLrTest, EndToEndFromSpectrum) {
  const AiryQuantileTable t = reference_table(true);
  const AsymptoticConstants c = test_constants(100, 1000, 2);
  const double l1 = 1.0 - std::exp(c.c1 - 0.01);
  const CanonicalSpectrum s = spectrum({l1, 0.3, 0.2}, 100, 1000, 2);
  const TestReport rep = modified_lr_test(s, 1, 0.90, t);
  EXPECT_EQ(rep.kind, StatisticKind::modified_lr);
  EXPECT_NEAR(rep.raw, c.c1 - 0.01, 1e-12);
  EXPECT_NEAR(rep.rescaled, 0.6214, 1e-3);
  EXPECT_EQ(rep.decision, Decision::reject);
  EXPECT_EQ(rep.N, 100);
  EXPECT_EQ(rep.T, 1000);
  EXPECT_EQ(rep.k, 2);
  EXPECT_EQ(rep.table_id, t.id());
  EXPECT_EQ(modified_lr_test(s, 1, 0.95, t).decision, Decision::fail_to_reject);
}

TEST(ModifiedLrTest, UnitEigenvalueRejects) {
  const AiryQuantileTable t = reference_table(false);
  const TestReport rep = modified_lr_test(spectrum({1.0, 0.3}, 100, 1000, 2), 1, 0.99, t);
  EXPECT_TRUE(rep.degenerate);
  EXPECT_TRUE(std::isinf(rep.rescaled));
  EXPECT_EQ(rep.decision, Decision::reject);
}
