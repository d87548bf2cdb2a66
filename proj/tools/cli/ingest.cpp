#include "ingest.hpp"

#include <hdcoint/errors.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hdcoint::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool is_missing(const std::string& s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  return lower.empty() || lower == "na" || lower == "nan" || lower == "null" || lower == "n/a";
}

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string cell_name(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

}  // namespace

IngestedPanel ingest_text(const std::string& text, const DatasetConfig& cfg, const std::string& source) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  {
    std::stringstream ss(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(ss, line)) {
      ++n;
      if (trim(line).empty()) continue;
      rows.push_back(split(line));
      line_numbers.push_back(n);
    }
  }
  if (rows.empty()) throw ParameterError(source + ": file is empty");

  const std::size_t width = rows.front().size();
  std::size_t date_idx = width;
  if (cfg.date_column) {
    if (*cfg.date_column < 1 || static_cast<std::size_t>(*cfg.date_column) > width) {
      throw ParameterError(source + ": date column " + std::to_string(*cfg.date_column) + " outside [1, " +
                           std::to_string(width) + "]");
    }
    date_idx = static_cast<std::size_t>(*cfg.date_column - 1);
  }

  bool header = false;
  if (cfg.has_header) {
    header = *cfg.has_header;
  } else {
    for (std::size_t j = 0; j < width; ++j) {
      if (j != date_idx && !is_missing(rows.front()[j]) && !parse_number(rows.front()[j])) header = true;
    }
  }

  std::vector<std::string> labels;
  for (std::size_t j = 0; j < width; ++j) {
    if (j == date_idx) continue;
    labels.push_back(header ? rows.front()[j] : "x" + std::to_string(labels.size() + 1));
  }
  const std::size_t first = header ? 1 : 0;
  const std::size_t n_rows = rows.size() - first;
  const std::size_t N = labels.size();
  if (N < 2) throw ParameterError(source + ": need at least 2 series columns, found " + std::to_string(N));
  if (n_rows < 3) throw ParameterError(source + ": need at least 3 data rows, found " + std::to_string(n_rows));

  Matrix values(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(n_rows));
  std::vector<std::string> missing;
  IngestedPanel out;
  for (std::size_t i = 0; i < n_rows; ++i) {
    const auto& row = rows[first + i];
    const std::size_t line = line_numbers[first + i];
    if (row.size() != width) {
      throw ParameterError(source + ": row " + std::to_string(line) + " has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(width));
    }
    std::size_t s = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == date_idx) {
        out.dates.push_back(row[j]);
        continue;
      }
      const std::string& cell = row[j];
      if (is_missing(cell)) {
        missing.push_back(cell_name(line, j + 1));
        values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) = 0.0;
      } else {
        const auto v = parse_number(cell);
        if (!v) throw ParameterError(source + ": non-numeric value '" + cell + "' at " + cell_name(line, j + 1));
        if (cfg.transform == Transform::log) {
          if (!(*v > 0.0)) {
            throw ParameterError(source + ": log transform needs positive values, got " + cell + " at " +
                                 cell_name(line, j + 1));
          }
          values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) = std::log(*v);
        } else {
          values(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)) = *v;
        }
      }
      ++s;
    }
  }
  if (!missing.empty()) {
    std::string msg = source + ": " + std::to_string(missing.size()) + " missing value(s) at ";
    for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 10); ++i) msg += (i ? "; " : "") + missing[i];
    if (missing.size() > 10) msg += "; ...";
    throw ParameterError(msg);
  }

  out.panel.initial = values.leftCols(1);
  out.panel.data = values.rightCols(values.cols() - 1);
  out.panel.labels = std::move(labels);
  if (!out.dates.empty()) {
    out.first_date = out.dates.front();
    out.last_date = out.dates.back();
  }
  return out;
}

IngestedPanel ingest(const DatasetConfig& cfg) {
  std::ifstream in(cfg.path, std::ios::binary);
  if (!in) throw ParameterError("cannot open data file '" + cfg.path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ingest_text(buffer.str(), cfg, cfg.path);
}

void write_panel_csv(const PanelSeries& panel, std::ostream& out) {
  const int N = panel.N();
  for (int i = 0; i < N; ++i) {
    out << (i ? "," : "")
        << (static_cast<std::size_t>(i) < panel.labels.size() ? panel.labels[static_cast<std::size_t>(i)]
                                                              : "x" + std::to_string(i + 1));
  }
  out << '\n';
  out.precision(17);
  auto row = [&](const Vector& x) {
    for (int i = 0; i < N; ++i) out << (i ? "," : "") << x(i);
    out << '\n';
  };
  row(panel.level(0));
  for (int t = 1; t <= panel.T(); ++t) row(panel.level(t));
}

}  // namespace hdcoint::cli
