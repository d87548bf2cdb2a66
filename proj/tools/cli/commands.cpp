#include "commands.hpp"

#include "config.hpp"

#include <hdcoint/asymptotics.hpp>
#include <hdcoint/errors.hpp>
#include <hdcoint/experiments.hpp>
#include <hdcoint/inference.hpp>
#include <hdcoint/spectra.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#ifndef HDCOINT_VERSION
#define HDCOINT_VERSION "0.0.0"
#endif

namespace hdcoint::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string samples_path_for(const std::string& table_path) {
  const fs::path p(table_path);
  return (p.parent_path() / (p.stem().string() + "_samples.csv")).string();
}

struct Globals {
  std::uint64_t seed = 42;
  int threads = 0;
  std::string out_dir = ".";
  std::string format = "json";
};

class Session {
 public:
  Session(const Globals& g, std::string command, std::vector<std::string> args, std::ostream& out)
      : g_(g), command_(std::move(command)), args_(std::move(args)), out_(out) {
    fs::create_directories(g_.out_dir);
  }

  std::string path(const std::string& name) const { return (fs::path(g_.out_dir) / name).string(); }

  std::ofstream open(const std::string& name) {
    const std::string p = path(name);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ParameterError("cannot write '" + p + "'");
    outputs_.push_back(name);
    return f;
  }

  void write_json(const std::string& name, const json& j) {
    auto f = open(name);
    f << j.dump(2) << '\n';
  }

  void write_experiment(const ExperimentResult& res) {
    const std::string stem = res.id + "_seed" + std::to_string(g_.seed);
    write_json(stem + ".json", res.to_json());
    {
      auto f = open(stem + ".csv");
      res.write_rows_csv(f);
    }
    if (g_.format == "csv") {
      res.write_rows_csv(out_);
    } else {
      out_ << res.to_json().dump(2) << '\n';
    }
  }

  void finish(const json& params) {
    json m = {{"tool", "hdcoint"},
              {"version", HDCOINT_VERSION},
              {"command", command_},
              {"arguments", args_},
              {"parameters", params},
              {"seed", g_.seed},
              {"threads", g_.threads},
              {"format", g_.format},
              {"outputs", outputs_}};
    const std::string name = "manifest_" + command_ + "_seed" + std::to_string(g_.seed) + ".json";
    std::ofstream f(path(name), std::ios::binary);
    if (!f) throw ParameterError("cannot write manifest in '" + g_.out_dir + "'");
    f << m.dump(2) << '\n';
  }

  const Globals& globals() const { return g_; }
  std::ostream& out() { return out_; }

 private:
  Globals g_;
  std::string command_;
  std::vector<std::string> args_;
  std::ostream& out_;
  std::vector<std::string> outputs_;
};

AiryQuantileTable table_or_default(const std::string& path) {
  return load_quantile_table(path.empty() ? default_table_path() : path);
}

}  // namespace

std::vector<TestRun> run_test(const IngestedPanel& data, const TestOptions& opts, const AiryQuantileTable& table) {
  const PanelSeries& panel = data.panel;
  if (opts.k_list.empty() || opts.r_list.empty()) throw ParameterError("need at least one k and one r");
  for (int r : opts.r_list) {
    if (r < 1 || r > panel.N()) throw ParameterError("r = " + std::to_string(r) + " outside [1, N]");
  }
  std::vector<TestRun> runs;
  for (int k : opts.k_list) {
    if (k < 1) throw ParameterError("k must be at least 1");
    const AsymptoticConstants c = test_constants(panel.N(), panel.T(), k);
    const CanonicalSpectrum s = modified_spectrum(panel, k);
    TestRun run;
    run.k = k;
    json constants = {{"c1", c.c1},
                      {"c2", c.c2},
                      {"lambda_plus", c.wachter.lambda_plus},
                      {"lambda_minus", c.wachter.lambda_minus}};
    json provenance = {{"N", panel.N()},
                       {"T", panel.T()},
                       {"k", k},
                       {"procedure", to_string(Procedure::modified)},
                       {"table", table.id()},
                       {"source", opts.source},
                       {"transform", opts.transform == Transform::log ? "log" : "none"},
                       {"labels", panel.labels}};
    if (!data.dates.empty()) provenance["dates"] = {{"first", data.first_date}, {"last", data.last_date}};
    for (int r : opts.r_list) {
      const TestReport rep = modified_lr_test(s, r, opts.alpha, table);
      json p = nullptr;
      if (rep.has_p_value) p = {{"value", rep.p_value}, {"stderr", rep.p_value_stderr}};
      run.reports.push_back({{"spectrum", s.values},
                             {"statistic", {{"kind", to_string(rep.kind)}, {"r", r}, {"value", finite_or_null(rep.raw)},
                                            {"degenerate", rep.degenerate}}},
                             {"rescaled", finite_or_null(rep.rescaled)},
                             {"alpha", rep.alpha},
                             {"quantile", rep.quantile_used},
                             {"decision", to_string(rep.decision)},
                             {"p_value", p},
                             {"constants", constants},
                             {"provenance", provenance}});
    }
    const double hi = std::min(1.0, std::max(c.wachter.lambda_plus, s.largest()) + 0.05);
    run.histogram = histogram(s.values, 0.0, hi, opts.bins);
    for (int b = 0; b < opts.bins; ++b) {
      const double mid = 0.5 * (run.histogram.edges[static_cast<std::size_t>(b)] +
                                run.histogram.edges[static_cast<std::size_t>(b) + 1]);
      run.wachter_pdf.push_back(wachter_pdf(mid, c.wachter));
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

void write_histogram_csv(const TestRun& run, std::ostream& out) {
  const Histogram& h = run.histogram;
  long total = 0;
  for (long c : h.counts) total += c;
  out << "bin_lo,bin_hi,count,density,wachter_pdf\n";
  out.precision(17);
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double width = h.edges[b + 1] - h.edges[b];
    const double density = total > 0 ? static_cast<double>(h.counts[b]) / (static_cast<double>(total) * width) : 0.0;
    out << h.edges[b] << ',' << h.edges[b + 1] << ',' << h.counts[b] << ',' << density << ',' << run.wachter_pdf[b]
        << '\n';
  }
}

AiryQuantileTable load_quantile_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParameterError("cannot open quantile table '" + path +
                         "'; generate one with `hdcoint quantiles` and pass it via --table");
  }
  AiryQuantileTable table = read_quantile_csv(in);
  std::ifstream samples(samples_path_for(path));
  if (samples) read_partial_sums_csv(table, samples);
  return table;
}

std::string default_table_path() {
  std::vector<std::string> candidates;
  if (const char* env = std::getenv("HDCOINT_DATA_DIR")) candidates.emplace_back(env);
#ifdef HDCOINT_INSTALL_DATA_DIR
  candidates.emplace_back(HDCOINT_INSTALL_DATA_DIR);
#endif
#ifdef HDCOINT_SOURCE_DATA_DIR
  candidates.emplace_back(HDCOINT_SOURCE_DATA_DIR);
#endif
  for (const auto& dir : candidates) {
    const fs::path p = fs::path(dir) / "airy_quantiles.csv";
    if (fs::exists(p)) return p.string();
  }
  throw ParameterError("no default quantile table found; generate one with `hdcoint quantiles` and pass --table");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-dimensional cointegration tests based on canonical correlations", "hdcoint"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", HDCOINT_VERSION);

  Globals g;
  app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0: all cores); never changes results")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();
  app.add_option("--format", g.format, "Report format on stdout")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));

  // simulate
  auto* sim = app.add_subcommand("simulate", "Simulate a VAR(k) panel from a JSON model file");
  std::string sim_config;
  std::string sim_output;
  sim->add_option("--config", sim_config, "Model configuration (JSON)")->required()->check(CLI::ExistingFile);
  sim->add_option("--output", sim_output, "Output CSV name (default panel_seed<S>.csv)");

  // test
  auto* tst = app.add_subcommand("test", "Run the modified LR test on a CSV panel");
  TestOptions topts;
  std::string data_path;
  std::string test_table;
  std::string transform = "none";
  bool header = false;
  bool no_header = false;
  int date_column = 0;
  tst->add_option("data", data_path, "CSV file, one column per series")->required()->check(CLI::ExistingFile);
  tst->add_option("--k", topts.k_list, "VAR orders")->delimiter(',')->capture_default_str();
  tst->add_option("--r", topts.r_list, "Numbers of top eigenvalues")->delimiter(',')->capture_default_str();
  tst->add_option("--alpha", topts.alpha, "Quantile level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  tst->add_option("--table", test_table, "Quantile table CSV (default: bundled table)");
  tst->add_option("--transform", transform, "none or log")->check(CLI::IsMember({"none", "log"}));
  tst->add_flag("--header", header, "First row is a header");
  tst->add_flag("--no-header", no_header, "First row is data");
  tst->add_option("--date-column", date_column, "1-based date column (ignored in computations)");
  tst->add_option("--bins", topts.bins, "Histogram bins")->capture_default_str()->check(CLI::PositiveNumber);

  // quantiles
  auto* qnt = app.add_subcommand("quantiles", "Monte Carlo quantiles of partial sums of Airy_1 points");
  int q_r = 3;
  int q_reps = 20000;
  long q_dim = 10000;
  long q_window = 0;
  std::vector<double> q_alphas = kDefaultAlphas;
  std::string q_output = "quantiles.csv";
  qnt->add_option("--r", q_r, "Largest r")->capture_default_str()->check(CLI::PositiveNumber);
  qnt->add_option("--reps", q_reps, "Replications (>= 1000)")->capture_default_str();
  qnt->add_option("--dim", q_dim, "Tridiagonal matrix dimension")->capture_default_str()->check(CLI::PositiveNumber);
  qnt->add_option("--window", q_window, "Rows kept from the tridiagonal model (0: automatic)")->capture_default_str();
  qnt->add_option("--alphas", q_alphas, "Quantile levels")->delimiter(',');
  qnt->add_option("--output", q_output, "Table file name; samples go to <stem>_samples.csv")->capture_default_str();

  // mc-size
  auto* msz = app.add_subcommand("mc-size", "Empirical size under random walks");
  int sz_n = 92;
  int sz_t = 522;
  std::vector<int> sz_k{1, 2, 3, 4};
  double sz_alpha = 0.95;
  int sz_reps = 10000;
  std::string sz_table;
  msz->add_option("--n", sz_n, "Dimension N")->capture_default_str();
  msz->add_option("--t", sz_t, "Length T")->capture_default_str();
  msz->add_option("--k", sz_k, "VAR orders")->delimiter(',')->capture_default_str();
  msz->add_option("--alpha", sz_alpha, "Quantile level")->capture_default_str();
  msz->add_option("--reps", sz_reps, "Replications")->capture_default_str();
  msz->add_option("--table", sz_table, "Quantile table CSV");

  // mc-density
  auto* mdn = app.add_subcommand("mc-density", "Rescaled r = 1 statistic under a DGP against a_1");
  std::string dn_config;
  int dn_k = 0;
  int dn_reps = 2000;
  long dn_ref_dim = 100000;
  int dn_ref_reps = 50000;
  mdn->add_option("--config", dn_config, "Model configuration (JSON)")->required()->check(CLI::ExistingFile);
  mdn->add_option("--k-test", dn_k, "Order used by the test (default: DGP order)");
  mdn->add_option("--reps", dn_reps, "Replications")->capture_default_str();
  mdn->add_option("--ref-dim", dn_ref_dim, "Tridiagonal dimension for the a_1 reference")->capture_default_str();
  mdn->add_option("--ref-reps", dn_ref_reps, "Size of the a_1 reference sample")->capture_default_str();

  // order-sweep
  auto* osw = app.add_subcommand("order-sweep", "Spectra and outliers across VAR orders");
  std::string os_config;
  std::string os_data;
  std::vector<int> os_k{1, 2, 3};
  std::string os_rule = "absolute";
  double os_threshold = std::numeric_limits<double>::quiet_NaN();
  int os_seeds = 50;
  std::string os_table;
  auto* os_cfg_opt = osw->add_option("--config", os_config, "Model configuration (JSON)")->check(CLI::ExistingFile);
  auto* os_data_opt = osw->add_option("--data", os_data, "CSV panel instead of a model")->check(CLI::ExistingFile);
  os_cfg_opt->excludes(os_data_opt);
  osw->add_option("--k-range", os_k, "Orders to sweep")->delimiter(',')->capture_default_str();
  osw->add_option("--rule", os_rule, "absolute: lambda_plus + threshold; edge: rescaled statistic > threshold")
      ->check(CLI::IsMember({"absolute", "edge"}));
  osw->add_option("--threshold", os_threshold,
                  "Gap (absolute, default 0.05) or rescaled cutoff (edge, default the 0.99 a_1 quantile)");
  osw->add_option("--seeds", os_seeds, "Panels simulated from the model")->capture_default_str();
  osw->add_option("--table", os_table, "Quantile table CSV (edge rule default)");

  // power
  auto* pwr = app.add_subcommand("power", "Rejection rate under an alternative");
  std::string pw_config;
  int pw_k = 0;
  double pw_alpha = 0.95;
  int pw_reps = 500;
  double pw_threshold = 0.05;
  std::string pw_table;
  pwr->add_option("--config", pw_config, "Model configuration (JSON)")->required()->check(CLI::ExistingFile);
  pwr->add_option("--k-test", pw_k, "Order used by the test (default: DGP order)");
  pwr->add_option("--alpha", pw_alpha, "Quantile level")->capture_default_str();
  pwr->add_option("--reps", pw_reps, "Replications")->capture_default_str();
  pwr->add_option("--threshold", pw_threshold, "Separation gap above lambda_plus")->capture_default_str();
  pwr->add_option("--table", pw_table, "Quantile table CSV");

  // projector-check
  auto* prj = app.add_subcommand("projector-check", "Projector model against the Jacobi ensemble");
  int pj_k = 1;
  int pj_n = 2;
  int pj_t = 8;
  int pj_reps = 5000;
  prj->add_option("--k", pj_k, "k")->capture_default_str();
  prj->add_option("--n", pj_n, "N")->capture_default_str();
  prj->add_option("--t", pj_t, "Ambient dimension")->capture_default_str();
  prj->add_option("--reps", pj_reps, "Replications")->capture_default_str();

  // coupling-check
  auto* cpl = app.add_subcommand("coupling-check", "Modified-procedure spectrum against the Jacobi ensemble");
  int cp_n = 100;
  int cp_t = 500;
  int cp_k = 1;
  int cp_reps = 200;
  cpl->add_option("--n", cp_n, "N")->capture_default_str();
  cpl->add_option("--t", cp_t, "T")->capture_default_str();
  cpl->add_option("--k", cp_k, "k")->capture_default_str();
  cpl->add_option("--reps", cp_reps, "Replications")->capture_default_str();

  // prop5-check
  auto* p5 = app.add_subcommand("prop5-check", "Correlation limit for a stationary scalar AR(1)");
  PowerScenario sc;
  int p5_reps = 500;
  p5->add_option("--beta", sc.beta, "AR coefficient")->capture_default_str();
  p5->add_option("--sigma2", sc.sigma2, "Innovation variance")->capture_default_str();
  p5->add_option("--n", sc.N, "Panel dimension for the eigenvalue bound")->capture_default_str();
  p5->add_option("--t", sc.T, "Length T")->capture_default_str();
  p5->add_option("--reps", p5_reps, "Paths")->capture_default_str();

  // lln-check
  auto* lln = app.add_subcommand("lln-check", "Spectrum bulk against the Wachter law");
  std::string ln_config;
  int ln_k = 0;
  std::string ln_procedure = "johansen";
  int ln_exclude = -1;
  double ln_threshold = 0.03;
  lln->add_option("--config", ln_config, "Model configuration (JSON)")->required()->check(CLI::ExistingFile);
  lln->add_option("--k-test", ln_k, "Order used by the procedure (default: DGP order)");
  lln->add_option("--procedure", ln_procedure, "johansen or modified")->check(CLI::IsMember({"johansen", "modified"}));
  lln->add_option("--exclude", ln_exclude, "Top eigenvalues left out of the bulk (default: threshold rule)");
  lln->add_option("--threshold", ln_threshold, "Outlier gap above lambda_plus")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto* cmd = app.get_subcommands().front();
  try {
    Session s(g, cmd->get_name(), args, out);
    if (cmd == sim) {
      const VarKSpec spec = load_var_spec(sim_config);
      const PanelSeries panel = simulate(spec, g.seed);
      const std::string name = sim_output.empty() ? "panel_seed" + std::to_string(g.seed) + ".csv" : sim_output;
      auto f = s.open(name);
      write_panel_csv(panel, f);
      out << s.path(name) << '\n';
      s.finish({{"config", sim_config}, {"N", spec.N}, {"T", spec.T}, {"k", spec.k}});
    } else if (cmd == tst) {
      DatasetConfig cfg;
      cfg.path = data_path;
      if (header && no_header) throw ParameterError("--header and --no-header are mutually exclusive");
      if (header) cfg.has_header = true;
      if (no_header) cfg.has_header = false;
      if (date_column > 0) cfg.date_column = date_column;
      cfg.transform = transform == "log" ? Transform::log : Transform::none;
      const IngestedPanel data = ingest(cfg);
      topts.source = data_path;
      topts.transform = cfg.transform;
      const AiryQuantileTable table = table_or_default(test_table);
      const auto runs = run_test(data, topts, table);
      std::ostringstream summary;
      summary << "k,r,alpha,statistic,rescaled,quantile,decision,p_value\n";
      summary.precision(17);
      for (const auto& run : runs) {
        for (const auto& rep : run.reports) {
          const int r = rep["statistic"]["r"].get<int>();
          if (g.format == "json") {
            s.write_json("test_k" + std::to_string(run.k) + "_r" + std::to_string(r) + ".json", rep);
          }
          summary << run.k << ',' << r << ',' << rep["alpha"].dump() << ',' << rep["statistic"]["value"].dump() << ','
                  << rep["rescaled"].dump() << ',' << rep["quantile"].dump() << ','
                  << rep["decision"].get<std::string>() << ','
                  << (rep["p_value"].is_null() ? std::string() : rep["p_value"]["value"].dump()) << '\n';
        }
        auto f = s.open("hist_k" + std::to_string(run.k) + ".csv");
        write_histogram_csv(run, f);
      }
      if (g.format == "csv") {
        auto f = s.open("test_summary.csv");
        f << summary.str();
      }
      out << summary.str();
      s.finish({{"data", data_path},
                {"k", topts.k_list},
                {"r", topts.r_list},
                {"alpha", topts.alpha},
                {"transform", transform},
                {"bins", topts.bins},
                {"table", table.id()},
                {"N", data.panel.N()},
                {"T", data.panel.T()}});
    } else if (cmd == qnt) {
      const AiryQuantileTable table = airy_sum_quantiles(q_r, q_alphas, q_dim, q_reps, g.seed, g.threads, q_window);
      {
        auto f = s.open(q_output);
        write_quantile_csv(table, f);
      }
      {
        auto f = s.open(fs::path(samples_path_for(q_output)).filename().string());
        write_partial_sums_csv(table, f);
      }
      write_quantile_csv(table, out);
      s.finish({{"r", q_r}, {"reps", q_reps}, {"dim", q_dim}, {"window", table.window}, {"alphas", q_alphas}});
    } else if (cmd == msz) {
      const AiryQuantileTable table = table_or_default(sz_table);
      s.write_experiment(size_experiment(sz_n, sz_t, sz_k, sz_alpha, sz_reps, g.seed, table, g.threads));
      s.finish({{"N", sz_n}, {"T", sz_t}, {"k", sz_k}, {"alpha", sz_alpha}, {"reps", sz_reps}, {"table", table.id()}});
    } else if (cmd == mdn) {
      const VarKSpec spec = load_var_spec(dn_config);
      const int k = dn_k > 0 ? dn_k : spec.k;
      const auto& ref = airy1_reference_sample(dn_ref_dim, dn_ref_reps, g.seed, g.threads);
      ExperimentResult res = null_density_experiment(spec, k, dn_reps, g.seed, ref, g.threads);
      res.params["reference"] = {{"dim", dn_ref_dim}, {"reps", dn_ref_reps}, {"seed", g.seed}};
      s.write_experiment(res);
      s.finish({{"config", dn_config}, {"k_test", k}, {"reps", dn_reps}, {"ref_dim", dn_ref_dim},
                {"ref_reps", dn_ref_reps}});
    } else if (cmd == osw) {
      if (os_config.empty() == os_data.empty()) throw ParameterError("order-sweep needs exactly one of --config, --data");
      OutlierRule rule = OutlierRule::absolute(std::isnan(os_threshold) ? 0.05 : os_threshold);
      if (os_rule == "edge") {
        double x = os_threshold;
        if (std::isnan(x)) {
          const auto q = table_or_default(os_table).quantile(1, 0.99);
          if (!q) throw ParameterError("quantile table lacks r = 1, alpha = 0.99; pass --threshold");
          x = *q;
        }
        rule = OutlierRule::edge_scaled(x);
      }
      json params = {{"k_range", os_k}, {"rule", os_rule}, {"threshold", rule.value}};
      if (!os_config.empty()) {
        s.write_experiment(order_sweep_experiment(load_var_spec(os_config), os_k, rule, os_seeds, g.seed, g.threads));
        params["config"] = os_config;
        params["seeds"] = os_seeds;
      } else {
        const IngestedPanel data = ingest({os_data, std::nullopt, std::nullopt, Transform::none, ""});
        ExperimentResult res;
        res.id = "order-sweep";
        res.seed = g.seed;
        res.params = {{"data", os_data}, {"k_range", os_k}, {"rule", os_rule}, {"threshold", rule.value}};
        res.columns = {"k", "lambda_plus", "cutoff", "largest", "outliers"};
        json rows = json::array();
        for (const auto& row : order_sweep(data.panel, os_k, rule)) {
          res.rows.push_back({static_cast<double>(row.k), row.lambda_plus, row.cutoff, row.largest,
                              static_cast<double>(row.outliers)});
          rows.push_back({{"k", row.k}, {"lambda_plus", row.lambda_plus}, {"cutoff", row.cutoff},
                          {"largest", row.largest}, {"outliers", row.outliers}});
        }
        res.summary = {{"per_k", rows}};
        s.write_experiment(res);
        params["data"] = os_data;
      }
      s.finish(params);
    } else if (cmd == pwr) {
      const VarKSpec spec = load_var_spec(pw_config);
      const int k = pw_k > 0 ? pw_k : spec.k;
      const AiryQuantileTable table = table_or_default(pw_table);
      s.write_experiment(power_experiment(spec, k, pw_alpha, pw_reps, g.seed, table, pw_threshold, g.threads));
      s.finish({{"config", pw_config}, {"k_test", k}, {"alpha", pw_alpha}, {"reps", pw_reps},
                {"threshold", pw_threshold}, {"table", table.id()}});
    } else if (cmd == prj) {
      s.write_experiment(projector_check(pj_k, pj_n, pj_t, pj_reps, g.seed, g.threads));
      s.finish({{"k", pj_k}, {"N", pj_n}, {"T_amb", pj_t}, {"reps", pj_reps}});
    } else if (cmd == cpl) {
      s.write_experiment(coupling_check(cp_n, cp_t, cp_k, cp_reps, g.seed, g.threads));
      s.finish({{"N", cp_n}, {"T", cp_t}, {"k", cp_k}, {"reps", cp_reps}});
    } else if (cmd == p5) {
      sc.seed = g.seed;
      s.write_experiment(prop5_check(sc, p5_reps, g.threads));
      s.finish({{"beta", sc.beta}, {"sigma2", sc.sigma2}, {"N", sc.N}, {"T", sc.T}, {"reps", p5_reps}});
    } else if (cmd == lln) {
      const VarKSpec spec = load_var_spec(ln_config);
      const int k = ln_k > 0 ? ln_k : spec.k;
      const Procedure proc = ln_procedure == "modified" ? Procedure::modified : Procedure::johansen;
      s.write_experiment(wachter_lln_check(spec, proc, k, g.seed, ln_exclude, ln_threshold));
      s.finish({{"config", ln_config}, {"k_test", k}, {"procedure", ln_procedure}, {"exclude", ln_exclude},
                {"threshold", ln_threshold}});
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace hdcoint::cli
