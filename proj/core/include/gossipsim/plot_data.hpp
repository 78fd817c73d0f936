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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gossipsim {

// A CSV table with a header row. Cells are unquoted strings.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index or -1.
  int column(std::string_view name) const;
};

// Throws SchemaError on ragged rows or a missing header.
Table parse_csv(std::string_view text);

// Long-format plot data: one output row per (panel, series, metric, x), with
// x = adversary_ratio, y = mean over seeds, y_err = sample std over seeds.
//
// Series are labelled `col=value;col=value` from the preset's series columns
// plus any other key column that varies in the table, so distinct
// configurations are never averaged together.
struct PlotPreset {
  std::string name;
  std::vector<std::string> metrics;
  std::vector<std::string> panel_columns;
  std::vector<std::string> series_columns;
};

// figure1 ... figure6. Throws ParameterError for an unknown name.
const PlotPreset& plot_preset(std::string_view name);
std::vector<std::string> plot_preset_names();

// Columns: figure, panel, series, metric, x, y, y_err, n.
// Throws SchemaError for missing columns, an empty table or non-numeric data.
void emit_plot_data(const Table& report, const PlotPreset& preset, std::ostream& out);

}  // namespace gossipsim
