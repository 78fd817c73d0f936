// Copyright 2026 The gossipsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gossipsim/plot_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "gossipsim/errors.hpp"
#include "text_util.hpp"

namespace gossipsim {

int Table::column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

Table parse_csv(std::string_view text) {
  Table t;
  bool first = true;
  for (std::string_view line : detail::split_lines(text)) {
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> cells;
    for (std::string_view c : detail::split(line, ',')) cells.emplace_back(c);
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size())
        throw SchemaError("row " + std::to_string(t.rows.size() + 1) + " has " +
                          std::to_string(cells.size()) + " fields, header has " +
                          std::to_string(t.header.size()));
      t.rows.push_back(std::move(cells));
    }
  }
  if (first) throw SchemaError("table has no header");
  return t;
}

namespace {

// Columns that identify a configuration (everything except seed and metrics).
const std::vector<std::string> kKeyColumns = {
    "topology",        "n",        "k_or_m",          "protocol",
    "broadcast_mode",  "broadcast_probability",       "adversary_placement",
    "adversary_active", "estimator"};

std::vector<PlotPreset> make_presets() {
  return {
      {"figure1", {"hit_ratio", "inverse_rank", "ndcg"}, {}, {"protocol", "broadcast_probability", "estimator"}},
      {"figure2", {"entropy"}, {}, {"protocol", "broadcast_probability", "estimator"}},
      {"figure3", {"inverse_rank"}, {"topology"}, {"protocol", "broadcast_probability"}},
      {"figure4", {"hit_ratio", "inverse_rank", "ndcg"}, {"broadcast_mode"}, {"protocol", "broadcast_probability"}},
      {"figure5", {"message_spread_ratio"}, {"protocol", "adversary_active"}, {"adversary_placement"}},
      {"figure6", {"hit_ratio", "inverse_rank"}, {"topology"}, {"protocol", "broadcast_probability", "adversary_active"}},
  };
}

const std::vector<PlotPreset>& presets() {
  static const std::vector<PlotPreset> kPresets = make_presets();
  return kPresets;
}

std::string label(const Table& t, const std::vector<std::string>& row,
                  const std::vector<int>& cols) {
  std::string out;
  for (int c : cols) {
    if (row[c].empty()) continue;
    if (!out.empty()) out += ';';
    out += t.header[c] + '=' + row[c];
  }
  return out;
}

}  // namespace

const PlotPreset& plot_preset(std::string_view name) {
  for (const PlotPreset& p : presets())
    if (p.name == name) return p;
  throw ParameterError("unknown figure preset '" + std::string(name) + "'");
}

std::vector<std::string> plot_preset_names() {
  std::vector<std::string> names;
  for (const PlotPreset& p : presets()) names.push_back(p.name);
  return names;
}

void emit_plot_data(const Table& report, const PlotPreset& preset, std::ostream& out) {
  std::vector<std::string> required = {"adversary_ratio", "seed"};
  for (const auto* list : {&preset.metrics, &preset.panel_columns, &preset.series_columns})
    required.insert(required.end(), list->begin(), list->end());
  std::vector<std::string> missing;
  for (const std::string& c : required)
    if (report.column(c) < 0) missing.push_back(c);
  if (!missing.empty()) {
    std::string msg = "report lacks column(s):";
    for (const std::string& c : missing) msg += ' ' + c;
    throw SchemaError(msg);
  }
  if (report.rows.empty()) throw SchemaError("report table is empty");

  std::vector<int> panel_cols, series_cols;
  for (const std::string& c : preset.panel_columns) panel_cols.push_back(report.column(c));
  for (const std::string& c : preset.series_columns) series_cols.push_back(report.column(c));
  for (const std::string& c : kKeyColumns) {
    const int idx = report.column(c);
    if (idx < 0 || std::count(panel_cols.begin(), panel_cols.end(), idx) ||
        std::count(series_cols.begin(), series_cols.end(), idx))
      continue;
    std::set<std::string> values;
    for (const auto& row : report.rows) values.insert(row[idx]);
    if (values.size() > 1) series_cols.push_back(idx);
  }

  const int x_col = report.column("adversary_ratio");
  using Key = std::tuple<std::string, std::string, std::size_t, double>;
  std::map<Key, std::vector<double>> groups;
  for (const auto& row : report.rows) {
    const auto x = detail::parse_double(row[x_col]);
    if (!x) throw SchemaError("non-numeric adversary_ratio '" + row[x_col] + "'");
    const std::string panel = label(report, row, panel_cols);
    const std::string series = label(report, row, series_cols);
    for (std::size_t m = 0; m < preset.metrics.size(); ++m) {
      const std::string& cell = row[report.column(preset.metrics[m])];
      const auto y = detail::parse_double(cell);
      if (!y) throw SchemaError("non-numeric " + preset.metrics[m] + " '" + cell + "'");
      groups[{panel, series, m, *x}].push_back(*y);
    }
  }

  out << "figure,panel,series,metric,x,y,y_err,n\n";
  for (const auto& [key, ys] : groups) {
    const auto& [panel, series, m, x] = key;
    double mean = 0.0;
    for (double y : ys) mean += y;
    mean /= static_cast<double>(ys.size());
    double err = 0.0;
    if (ys.size() > 1) {
      for (double y : ys) err += (y - mean) * (y - mean);
      err = std::sqrt(err / static_cast<double>(ys.size() - 1));
    }
    out << preset.name << ',' << panel << ',' << series << ',' << preset.metrics[m] << ','
        << detail::format_double(x) << ',' << detail::format_double(mean) << ','
        << detail::format_double(err) << ',' << ys.size() << '\n';
  }
}

}  // namespace gossipsim
