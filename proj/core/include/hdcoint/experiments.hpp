#pragma once

#include "hdcoint/ensembles.hpp"
#include "hdcoint/inference.hpp"
#include "hdcoint/model.hpp"
#include "hdcoint/spectra.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hdcoint {

// Summary JSON plus optional per-replication table. Numeric content depends
// only on the parameters and the seed; runtime is reported separately.
struct ExperimentResult {
  std::string id;
  nlohmann::json params;
  nlohmann::json summary;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;

  nlohmann::json to_json() const;  // id, params, summary, seed
  void write_rows_csv(std::ostream& out) const;
};

// y_t = beta y_{t-1} + xi_t, xi_t ~ N(0, sigma2), y_0 = 0.
struct PowerScenario {
  double beta = 0.5;
  double sigma2 = 1.0;
  int N = 20;
  int T = 20000;
  std::uint64_t seed = 0;
};

// Reference sample of a_1 (the largest Airy_1 point) from the tridiagonal
// model; memoized per (n, reps, seed) within the process.
const std::vector<double>& airy1_reference_sample(long n, int reps, std::uint64_t seed, int threads = 0);

// Rejection rates of the modified LR test (r = 1) on random walks
// dX_t = eps_t, one panel per replication shared across the k values.
ExperimentResult size_experiment(int N, int T, const std::vector<int>& k_list, double alpha, int reps,
                                 std::uint64_t seed, const AiryQuantileTable& table, int threads = 0);

// Rescaled r = 1 statistics under a low-rank DGP, and their KS distance to
// a reference sample of a_1.
ExperimentResult null_density_experiment(const VarKSpec& dgp, int k_test, int reps, std::uint64_t seed,
                                         const std::vector<double>& reference, int threads = 0);

// Separation rule for outlier eigenvalues. `absolute`: lambda > lambda_plus
// + value. `edge_scaled`: the eigenvalue's own rescaled statistic
// (ln(1 - lambda) - c1) / (N^{-2/3} c2) exceeds value, i.e. the cutoff
// follows the N^{-2/3} edge fluctuations instead of a fixed gap.
struct OutlierRule {
  enum class Kind { absolute, edge_scaled };
  Kind kind = Kind::absolute;
  double value = 0.05;

  static OutlierRule absolute(double gap) { return {Kind::absolute, gap}; }
  static OutlierRule edge_scaled(double x) { return {Kind::edge_scaled, x}; }
};

double outlier_cutoff(int N, long T, int k, const OutlierRule& rule);

struct OrderSweepRow {
  int k = 1;
  double lambda_plus = 0.0;
  double cutoff = 0.0;
  double largest = 0.0;
  int outliers = 0;
};

// Modified-procedure spectrum for each order with its outlier count.
std::vector<OrderSweepRow> order_sweep(const PanelSeries& panel, const std::vector<int>& k_range,
                                       const OutlierRule& rule);

// Repeats the sweep over `seeds` panels from `dgp` and reports how often the
// sharp-transition pattern appears: outliers for every k' < dgp.k, none for
// k' >= dgp.k.
ExperimentResult order_sweep_experiment(const VarKSpec& dgp, const std::vector<int>& k_range,
                                        const OutlierRule& rule, int seeds, std::uint64_t seed, int threads = 0);

// Rejection rate of the modified LR test (r = 1) under an alternative, with
// the gap between the top eigenvalue and lambda_plus.
ExperimentResult power_experiment(const VarKSpec& dgp, int k_test, double alpha, int reps, std::uint64_t seed,
                                  const AiryQuantileTable& table, double threshold = 0.05, int threads = 0);

// Per-path squared correlation of the k = 1 residuals of a stationary
// scalar AR(1) against its limit 1 / (2/(1-beta) + (1+beta)/(6 sigma2) (y_T - y_0)^2),
// and the top eigenvalue of an N-dimensional panel whose first coordinate
// is that series (the rest independent random walks).
ExperimentResult prop5_check(const PowerScenario& sc, int reps, int threads = 0);

double prop5_limit(double beta, double sigma2, double increment);

// Bulk of one spectrum versus Wachter(2, T/N - k). `exclude` top values are
// dropped from the bulk; a negative value uses the threshold rule instead.
// The check is flagged not applicable when the DGP parameters are not of
// low rank (total rank above N/10).
ExperimentResult wachter_lln_check(const VarKSpec& dgp, Procedure procedure, int k_test, std::uint64_t seed,
                                   int exclude = -1, double threshold = 0.03);

// Largest eigenvalue of the projector model against the Jacobi ensemble with
// matching parameters: two-sample KS distance.
ExperimentResult projector_check(int k, int N, int T_amb, int reps, std::uint64_t seed, int threads = 0);

// Modified-procedure spectra of random walks against J(N; N/2, (T-(k+1)N)/2),
// eigenvalues pooled over replications: two-sample KS distance.
ExperimentResult coupling_check(int N, int T, int k, int reps, std::uint64_t seed, int threads = 0);

}  // namespace hdcoint
