#include "hdcoint/experiments.hpp"

#include "hdcoint/asymptotics.hpp"
#include "hdcoint/errors.hpp"
#include "hdcoint/parallel.hpp"
#include "hdcoint/random.hpp"
#include "hdcoint/stats.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <tuple>

namespace hdcoint {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

int numerical_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

double top_rescaled(const CanonicalSpectrum& s) {
  const StatisticValue lr = spectral_statistic(s, StatisticKind::modified_lr, 0, 1);
  if (lr.degenerate) return std::numeric_limits<double>::infinity();
  return rescale_modified_lr(lr.value, 1, s.meta.N, s.meta.T, s.meta.k);
}

void check_regime(int N, long T, int k) {
  if (!(static_cast<double>(T) / N > k + 1.0)) {
    throw DomainError("T/N must exceed k + 1 (T > (k+1)N is required); got N = " + std::to_string(N) +
                      ", T = " + std::to_string(T) + ", k = " + std::to_string(k));
  }
}

}  // namespace

nlohmann::json ExperimentResult::to_json() const {
  return {{"id", id}, {"params", params}, {"summary", summary}, {"seed", seed}};
}

void ExperimentResult::write_rows_csv(std::ostream& out) const {
  for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << columns[j];
  out << '\n';
  out.precision(17);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
    out << '\n';
  }
}

const std::vector<double>& airy1_reference_sample(long n, int reps, std::uint64_t seed, int threads) {
  static std::mutex mutex;
  static std::map<std::tuple<long, int, std::uint64_t>, std::shared_ptr<const std::vector<double>>> cache;
  const auto key = std::make_tuple(n, reps, seed);
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  if (reps < 1 || n < 1) throw ParameterError("reference sample needs n >= 1 and reps >= 1");
  auto sample = std::make_shared<std::vector<double>>(static_cast<std::size_t>(reps));
  parallel_for(sample->size(), threads, [&](std::size_t i) {
    (*sample)[i] = goe_top_eigs(n, 1, derive_seed(seed, Stream::reference, i))[0];
  });
  std::sort(sample->begin(), sample->end());
  std::lock_guard<std::mutex> lock(mutex);
  const auto [it, inserted] = cache.emplace(key, std::move(sample));
  return *it->second;
}

ExperimentResult size_experiment(int N, int T, const std::vector<int>& k_list, double alpha, int reps,
                                 std::uint64_t seed, const AiryQuantileTable& table, int threads) {
  const auto start = Clock::now();
  if (k_list.empty()) throw ParameterError("size experiment needs at least one k");
  if (reps < 1) throw ParameterError("reps must be positive");
  const int kmax = *std::max_element(k_list.begin(), k_list.end());
  check_regime(N, T, kmax);
  const auto q = table.quantile(1, alpha);
  if (!q) throw ParameterError("quantile table has no entry for r = 1 at the requested alpha");

  const VarKSpec spec = VarKSpec::null_model(N, T, 1);
  std::vector<std::vector<double>> stats(static_cast<std::size_t>(reps));
  parallel_for(stats.size(), threads, [&](std::size_t i) {
    const PanelSeries panel = simulate(spec, derive_seed(seed, Stream::replication, i));
    auto& row = stats[i];
    for (int k : k_list) row.push_back(top_rescaled(modified_spectrum(panel, k)));
  });

  ExperimentResult res;
  res.id = "mc-size";
  res.seed = seed;
  res.params = {{"N", N}, {"T", T}, {"k", k_list}, {"alpha", alpha}, {"reps", reps}, {"quantile", *q},
                {"table", table.id()}};
  nlohmann::json per_k = nlohmann::json::array();
  for (std::size_t j = 0; j < k_list.size(); ++j) {
    long rejections = 0;
    for (const auto& row : stats) rejections += row[j] > *q ? 1 : 0;
    const double rate = static_cast<double>(rejections) / reps;
    per_k.push_back({{"k", k_list[j]}, {"rejections", rejections}, {"rate", rate},
                     {"stderr", binomial_stderr(rate, reps)}});
  }
  res.summary = {{"per_k", per_k}};
  for (int k : k_list) res.columns.push_back("rescaled_k" + std::to_string(k));
  res.rows = std::move(stats);
  res.runtime_seconds = seconds_since(start);
  return res;
}

ExperimentResult null_density_experiment(const VarKSpec& dgp, int k_test, int reps, std::uint64_t seed,
                                         const std::vector<double>& reference, int threads) {
  const auto start = Clock::now();
  dgp.validate();
  check_regime(dgp.N, dgp.T, k_test);
  if (reps < 1) throw ParameterError("reps must be positive");
  if (reference.empty()) throw ParameterError("reference sample is empty");
  std::vector<double> values(static_cast<std::size_t>(reps));
  parallel_for(values.size(), threads, [&](std::size_t i) {
    values[i] = top_rescaled(modified_spectrum(simulate(dgp, derive_seed(seed, Stream::replication, i)), k_test));
  });
  ExperimentResult res;
  res.id = "mc-density";
  res.seed = seed;
  res.params = {{"N", dgp.N}, {"T", dgp.T}, {"k_dgp", dgp.k}, {"k_test", k_test}, {"reps", reps},
                {"reference_size", reference.size()}};
  const Histogram h = histogram(values, -8.0, 4.0, 48);
  res.summary = {{"ks", ks_two_sample(values, reference)},
                 {"mean", mean_of(values)},
                 {"histogram", {{"edges", h.edges}, {"counts", h.counts}}}};
  res.columns = {"rescaled"};
  for (double v : values) res.rows.push_back({v});
  res.runtime_seconds = seconds_since(start);
  return res;
}

double outlier_cutoff(int N, long T, int k, const OutlierRule& rule) {
  const AsymptoticConstants c = test_constants(N, T, k);
  const double lp = c.wachter.lambda_plus;
  if (rule.kind == OutlierRule::Kind::absolute) return lp + rule.value;
  return 1.0 - (1.0 - lp) * std::exp(rule.value * std::pow(static_cast<double>(N), -2.0 / 3.0) * c.c2);
}

std::vector<OrderSweepRow> order_sweep(const PanelSeries& panel, const std::vector<int>& k_range,
                                       const OutlierRule& rule) {
  std::vector<OrderSweepRow> out;
  for (int k : k_range) {
    check_regime(panel.N(), panel.T(), k);
    const CanonicalSpectrum s = modified_spectrum(panel, k);
    OrderSweepRow row;
    row.k = k;
    row.lambda_plus = test_constants(panel.N(), panel.T(), k).wachter.lambda_plus;
    row.cutoff = outlier_cutoff(panel.N(), panel.T(), k, rule);
    row.largest = s.largest();
    row.outliers = static_cast<int>(
        std::count_if(s.values.begin(), s.values.end(), [&](double v) { return v > row.cutoff; }));
    out.push_back(row);
  }
  return out;
}

ExperimentResult order_sweep_experiment(const VarKSpec& dgp, const std::vector<int>& k_range,
                                        const OutlierRule& rule, int seeds, std::uint64_t seed, int threads) {
  const auto start = Clock::now();
  dgp.validate();
  if (seeds < 1) throw ParameterError("seeds must be positive");
  std::vector<std::vector<OrderSweepRow>> sweeps(static_cast<std::size_t>(seeds));
  parallel_for(sweeps.size(), threads, [&](std::size_t i) {
    sweeps[i] = order_sweep(simulate(dgp, derive_seed(seed, Stream::replication, i)), k_range, rule);
  });

  ExperimentResult res;
  res.id = "order-sweep";
  res.seed = seed;
  res.params = {{"N", dgp.N}, {"T", dgp.T}, {"k_dgp", dgp.k}, {"k_range", k_range},
                {"rule", rule.kind == OutlierRule::Kind::absolute ? "absolute" : "edge_scaled"},
                {"threshold", rule.value},
                {"seeds", seeds}};
  res.columns = {"seed_index", "k", "lambda_plus", "cutoff", "largest", "outliers"};
  long pattern = 0;
  long monotone = 0;
  std::vector<long> with_outliers(k_range.size(), 0);
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    bool ok = true;
    bool nonincreasing = true;
    for (std::size_t j = 0; j < sweeps[i].size(); ++j) {
      const auto& row = sweeps[i][j];
      ok = ok && (row.k < dgp.k ? row.outliers > 0 : row.outliers == 0);
      if (j > 0 && k_range[j] > k_range[j - 1]) nonincreasing = nonincreasing && row.outliers <= sweeps[i][j - 1].outliers;
      with_outliers[j] += row.outliers > 0 ? 1 : 0;
      res.rows.push_back({static_cast<double>(i), static_cast<double>(row.k), row.lambda_plus, row.cutoff, row.largest,
                          static_cast<double>(row.outliers)});
    }
    pattern += ok ? 1 : 0;
    monotone += nonincreasing ? 1 : 0;
  }
  nlohmann::json per_k = nlohmann::json::array();
  for (std::size_t j = 0; j < k_range.size(); ++j) {
    per_k.push_back({{"k", k_range[j]}, {"share_with_outliers", static_cast<double>(with_outliers[j]) / seeds}});
  }
  res.summary = {{"pattern_share", static_cast<double>(pattern) / seeds},
                 {"nonincreasing_share", static_cast<double>(monotone) / seeds},
                 {"per_k", per_k}};
  res.runtime_seconds = seconds_since(start);
  return res;
}

ExperimentResult power_experiment(const VarKSpec& dgp, int k_test, double alpha, int reps, std::uint64_t seed,
                                  const AiryQuantileTable& table, double threshold, int threads) {
  const auto start = Clock::now();
  dgp.validate();
  check_regime(dgp.N, dgp.T, k_test);
  if (reps < 1) throw ParameterError("reps must be positive");
  const auto q = table.quantile(1, alpha);
  if (!q) throw ParameterError("quantile table has no entry for r = 1 at the requested alpha");
  const double lp = test_constants(dgp.N, dgp.T, k_test).wachter.lambda_plus;

  std::vector<std::array<double, 2>> out(static_cast<std::size_t>(reps));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const CanonicalSpectrum s = modified_spectrum(simulate(dgp, derive_seed(seed, Stream::replication, i)), k_test);
    out[i] = {top_rescaled(s), s.largest()};
  });

  ExperimentResult res;
  res.id = "power";
  res.seed = seed;
  res.params = {{"N", dgp.N}, {"T", dgp.T}, {"k_dgp", dgp.k}, {"k_test", k_test}, {"alpha", alpha},
                {"reps", reps}, {"threshold", threshold}, {"rank_pi", numerical_rank(dgp.pi)},
                {"table", table.id()}};
  long rejections = 0;
  long separated = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  std::vector<double> gaps;
  res.columns = {"rescaled", "largest"};
  for (const auto& o : out) {
    rejections += o[0] > *q ? 1 : 0;
    separated += o[1] > lp + threshold ? 1 : 0;
    min_gap = std::min(min_gap, o[1] - lp);
    gaps.push_back(o[1] - lp);
    res.rows.push_back({o[0], o[1]});
  }
  const double rate = static_cast<double>(rejections) / reps;
  res.summary = {{"rate", rate},
                 {"stderr", binomial_stderr(rate, reps)},
                 {"lambda_plus", lp},
                 {"separated_share", static_cast<double>(separated) / reps},
                 {"min_gap", min_gap},
                 {"mean_gap", mean_of(gaps)}};
  res.runtime_seconds = seconds_since(start);
  return res;
}

double prop5_limit(double beta, double sigma2, double increment) {
  return 1.0 / (2.0 / (1.0 - beta) + (1.0 + beta) / (6.0 * sigma2) * increment * increment);
}

ExperimentResult prop5_check(const PowerScenario& sc, int reps, int threads) {
  const auto start = Clock::now();
  if (!(std::abs(sc.beta) < 1.0)) throw ParameterError("need |beta| < 1");
  if (!(sc.sigma2 > 0.0)) throw ParameterError("need sigma2 > 0");
  if (sc.N < 1 || reps < 1) throw ParameterError("need N >= 1 and reps >= 1");
  check_regime(sc.N, sc.T, 1);

  std::vector<std::array<double, 4>> out(static_cast<std::size_t>(reps));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    Rng rng = make_rng(derive_seed(sc.seed, Stream::replication, i));
    std::normal_distribution<double> normal;
    const double sd = std::sqrt(sc.sigma2);
    PanelSeries panel;
    panel.data = Matrix::Zero(sc.N, sc.T);
    panel.initial = Matrix::Zero(sc.N, 1);
    double y = 0.0;
    for (int t = 0; t < sc.T; ++t) {
      y = sc.beta * y + sd * normal(rng);
      panel.data(0, t) = y;
    }
    if (sc.N > 1) {
      const Matrix steps = standard_normal_matrix(rng, sc.N - 1, sc.T);
      Vector level = Vector::Zero(sc.N - 1);
      for (int t = 0; t < sc.T; ++t) {
        level += steps.col(t);
        panel.data.block(1, t, sc.N - 1, 1) = level;
      }
    }
    PanelSeries scalar;
    scalar.data = panel.data.topRows(1);
    scalar.initial = panel.initial.topRows(1);
    const double corr2 = modified_spectrum(scalar, 1).largest();
    const double limit = prop5_limit(sc.beta, sc.sigma2, y);
    const double full = sc.N > 1 ? modified_spectrum(panel, 1).largest() : corr2;
    out[i] = {corr2, limit, full, y};
  });

  ExperimentResult res;
  res.id = "prop5-check";
  res.seed = sc.seed;
  res.params = {{"beta", sc.beta}, {"sigma2", sc.sigma2}, {"N", sc.N}, {"T", sc.T}, {"reps", reps}};
  res.columns = {"corr2", "limit", "lambda1", "increment"};
  long close = 0;
  long bounded = 0;
  double max_dev = 0.0;
  for (const auto& o : out) {
    const double dev = std::abs(o[0] - o[1]);
    max_dev = std::max(max_dev, dev);
    close += dev < 0.02 ? 1 : 0;
    bounded += o[2] >= o[0] - 0.02 ? 1 : 0;
    res.rows.push_back({o[0], o[1], o[2], o[3]});
  }
  res.summary = {{"share_within_0.02", static_cast<double>(close) / reps},
                 {"share_bound_holds", static_cast<double>(bounded) / reps},
                 {"max_abs_deviation", max_dev}};
  res.runtime_seconds = seconds_since(start);
  return res;
}

ExperimentResult wachter_lln_check(const VarKSpec& dgp, Procedure procedure, int k_test, std::uint64_t seed,
                                   int exclude, double threshold) {
  const auto start = Clock::now();
  dgp.validate();
  const AsymptoticConstants c = test_constants(dgp.N, dgp.T, k_test);
  const PanelSeries panel = simulate(dgp, seed);
  const CanonicalSpectrum s = compute_spectrum(procedure, panel, k_test, dgp.det_terms.dimension() > 0
                                                                             ? dgp.det_terms
                                                                             : DeterministicTerms::intercept());
  const double lp = c.wachter.lambda_plus;
  const int outliers = static_cast<int>(
      std::count_if(s.values.begin(), s.values.end(), [&](double v) { return v > lp + threshold; }));
  int total_rank = numerical_rank(dgp.pi);
  for (const auto& g : dgp.gammas) total_rank += numerical_rank(g);
  const bool applicable = total_rank <= std::max(1, dgp.N / 10);
  const int drop = std::clamp(exclude >= 0 ? exclude : outliers, 0, static_cast<int>(s.values.size()) - 1);
  const std::vector<double> bulk(s.values.begin() + drop, s.values.end());
  const double ks = ks_one_sample(bulk, [&](double x) { return wachter_cdf(x, c.wachter); });

  ExperimentResult res;
  res.id = "wachter-lln";
  res.seed = seed;
  res.params = {{"N", dgp.N}, {"T", dgp.T}, {"k_dgp", dgp.k}, {"k_test", k_test},
                {"procedure", to_string(procedure)}, {"threshold", threshold}, {"excluded", drop}};
  res.summary = {{"ks", ks},
                 {"outliers", outliers},
                 {"applicable", applicable},
                 {"total_rank", total_rank},
                 {"lambda_plus", lp},
                 {"lambda_minus", c.wachter.lambda_minus},
                 {"largest", s.largest()},
                 {"pb_mean", spectral_statistic(s, StatisticKind::pb, 0, dgp.N).value / dgp.N}};
  res.columns = {"lambda"};
  for (double v : s.values) res.rows.push_back({v});
  res.runtime_seconds = seconds_since(start);
  return res;
}

ExperimentResult projector_check(int k, int N, int T_amb, int reps, std::uint64_t seed, int threads) {
  const auto start = Clock::now();
  if (reps < 1) throw ParameterError("reps must be positive");
  const JacobiParams jp = projector_model_jacobi_params(k, N, T_amb);
  std::vector<double> proj(static_cast<std::size_t>(reps));
  std::vector<double> jac(static_cast<std::size_t>(reps));
  std::vector<int> resamples(static_cast<std::size_t>(reps));
  parallel_for(proj.size(), threads, [&](std::size_t i) {
    const ProjectorModelSample s = projector_model_spectrum({k, N, T_amb, derive_seed(seed, Stream::haar, i)});
    proj[i] = s.values.front();
    resamples[i] = s.resamples;
    jac[i] = sample_jacobi_spectrum(jp, derive_seed(seed, Stream::jacobi_pool, i)).front();
  });
  ExperimentResult res;
  res.id = "projector-check";
  res.seed = seed;
  res.params = {{"k", k}, {"N", N}, {"T_amb", T_amb}, {"reps", reps}, {"jacobi_p", jp.p}, {"jacobi_q", jp.q}};
  res.summary = {{"ks", ks_two_sample(proj, jac)},
                 {"mean_projector", mean_of(proj)},
                 {"mean_jacobi", mean_of(jac)},
                 {"resamples", std::accumulate(resamples.begin(), resamples.end(), 0)}};
  res.columns = {"projector_lambda1", "jacobi_lambda1"};
  for (std::size_t i = 0; i < proj.size(); ++i) res.rows.push_back({proj[i], jac[i]});
  res.runtime_seconds = seconds_since(start);
  return res;
}

ExperimentResult coupling_check(int N, int T, int k, int reps, std::uint64_t seed, int threads) {
  const auto start = Clock::now();
  check_regime(N, T, k);
  if (reps < 1) throw ParameterError("reps must be positive");
  const JacobiParams jp{N, N / 2.0, (static_cast<double>(T) - static_cast<double>(k + 1) * N) / 2.0};
  const VarKSpec spec = VarKSpec::null_model(N, T, 1);
  std::vector<std::vector<double>> model(static_cast<std::size_t>(reps));
  std::vector<std::vector<double>> jacobi(static_cast<std::size_t>(reps));
  parallel_for(model.size(), threads, [&](std::size_t i) {
    model[i] = modified_spectrum(simulate(spec, derive_seed(seed, Stream::replication, i)), k).values;
    jacobi[i] = sample_jacobi_spectrum(jp, derive_seed(seed, Stream::jacobi_pool, i));
  });
  std::vector<double> pooled_model;
  std::vector<double> pooled_jacobi;
  std::vector<double> top_model;
  std::vector<double> top_jacobi;
  for (std::size_t i = 0; i < model.size(); ++i) {
    pooled_model.insert(pooled_model.end(), model[i].begin(), model[i].end());
    pooled_jacobi.insert(pooled_jacobi.end(), jacobi[i].begin(), jacobi[i].end());
    top_model.push_back(model[i].front());
    top_jacobi.push_back(jacobi[i].front());
  }
  ExperimentResult res;
  res.id = "coupling-check";
  res.seed = seed;
  res.params = {{"N", N}, {"T", T}, {"k", k}, {"reps", reps}, {"jacobi_p", jp.p}, {"jacobi_q", jp.q}};
  res.summary = {{"ks_pooled", ks_two_sample(pooled_model, pooled_jacobi)},
                 {"ks_largest", ks_two_sample(top_model, top_jacobi)},
                 {"mean_largest_model", mean_of(top_model)},
                 {"mean_largest_jacobi", mean_of(top_jacobi)}};
  res.columns = {"model_lambda1", "jacobi_lambda1"};
  for (std::size_t i = 0; i < top_model.size(); ++i) res.rows.push_back({top_model[i], top_jacobi[i]});
  res.runtime_seconds = seconds_since(start);
  return res;
}

}  // namespace hdcoint
