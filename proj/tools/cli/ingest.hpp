#pragma once

#include <hdcoint/model.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hdcoint::cli {

enum class Transform { none, log };

struct DatasetConfig {
  std::string path;
  std::optional<bool> has_header;  // unset: header iff the first row is not numeric
  std::optional<int> date_column;  // 1-based; ignored for computation
  Transform transform = Transform::none;
  std::string frequency_note;
};

struct IngestedPanel {
  PanelSeries panel;  // first data row is X_0, the rest X_1..X_T
  std::vector<std::string> dates;
  std::string first_date;
  std::string last_date;
};

// Parses CSV text; `source` names the input in error messages.
IngestedPanel ingest_text(const std::string& text, const DatasetConfig& cfg, const std::string& source);
IngestedPanel ingest(const DatasetConfig& cfg);

void write_panel_csv(const PanelSeries& panel, std::ostream& out);

}  // namespace hdcoint::cli
