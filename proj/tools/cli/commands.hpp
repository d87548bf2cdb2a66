#pragma once

#include "ingest.hpp"

#include <hdcoint/ensembles.hpp>
#include <hdcoint/stats.hpp>

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace hdcoint::cli {

struct TestOptions {
  std::vector<int> k_list{1};
  std::vector<int> r_list{1, 2, 3};
  double alpha = 0.95;
  int bins = 50;
  std::string source;  // echoed in provenance
  Transform transform = Transform::none;
};

struct TestRun {
  int k = 1;
  std::vector<nlohmann::json> reports;  // one per r
  Histogram histogram;
  std::vector<double> wachter_pdf;  // at bin midpoints
};

// Modified-procedure test for every k, with a report per r and a histogram
// of the spectrum next to the Wachter(2, T/N - k) density.
std::vector<TestRun> run_test(const IngestedPanel& data, const TestOptions& opts, const AiryQuantileTable& table);

void write_histogram_csv(const TestRun& run, std::ostream& out);

// Loads a quantile table and, when present, the partial-sum samples stored
// next to it as <stem>_samples.csv.
AiryQuantileTable load_quantile_table(const std::string& path);
std::string default_table_path();

// Entry point; returns the process exit code (0 ok, 2 invalid input,
// 3 numerical domain error, 1 anything else).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdcoint::cli
