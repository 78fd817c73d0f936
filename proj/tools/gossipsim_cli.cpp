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

// gossipsim run | plot-data | validate
//
// Exit codes: 0 success, 2 configuration or usage error, 3 I/O error,
// 1 anything else.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "gossipsim/errors.hpp"
#include "gossipsim/experiment.hpp"
#include "gossipsim/plot_data.hpp"

namespace fs = std::filesystem;
using namespace gossipsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t expected_rows(const ExperimentConfig& cfg) {
  return expand_cells(cfg).size() * cfg.seeds.size() * cfg.estimators.size();
}

int cmd_run(const fs::path& config, const std::string& out_dir, std::size_t parallel) {
  ExperimentConfig cfg = load_config(config);
  if (!out_dir.empty()) cfg.output_path = out_dir;
  if (cfg.output_path.empty())
    throw ConfigError("no output directory (set output_path or pass --out)", "output_path");

  const ExperimentResult result = run_experiment(cfg, parallel);

  std::error_code ec;
  fs::create_directories(cfg.output_path, ec);
  if (ec) throw IoError("cannot create '" + cfg.output_path.string() + "': " + ec.message());
  std::ostringstream report, aggregate;
  write_report_csv(report, result.rows);
  write_aggregate_csv(aggregate, result.aggregates);
  write_file(cfg.output_path / "report.csv", report.str());
  write_file(cfg.output_path / "aggregate.csv", aggregate.str());
  std::cout << "wrote " << result.rows.size() << " rows to "
            << (cfg.output_path / "report.csv").string() << " and "
            << result.aggregates.size() << " rows to "
            << (cfg.output_path / "aggregate.csv").string() << '\n';
  return kExitOk;
}

// Several reports are concatenated; their headers must match.
int cmd_plot(const std::vector<std::string>& reports, const std::string& figure,
             const std::string& out) {
  const PlotPreset* preset;
  try {
    preset = &plot_preset(figure);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what(), "figure");
  }
  Table table = parse_csv(read_text(reports.front()));
  for (std::size_t i = 1; i < reports.size(); ++i) {
    Table more = parse_csv(read_text(reports[i]));
    if (more.header != table.header)
      throw SchemaError("header of " + reports[i] + " differs from " + reports.front());
    for (auto& row : more.rows) table.rows.push_back(std::move(row));
  }
  const fs::path report_path = reports.front();
  std::ostringstream data;
  emit_plot_data(table, *preset, data);
  const fs::path target =
      out.empty() ? report_path.parent_path() / ("plot_" + figure + ".csv") : fs::path(out);
  write_file(target, data.str());
  std::cout << "wrote " << target.string() << '\n';
  return kExitOk;
}

int cmd_validate(const fs::path& config) {
  const ExperimentConfig cfg = load_config(config);
  // Graph-dependent checks against the first seed's graph.
  const NetworkGraph g = build_graph(cfg, cfg.seeds.front());
  for (const Cell& cell : expand_cells(cfg)) {
    cell.protocol.validate(g.num_nodes());
    AdversaryConfig acfg;
    acfg.ratio = cell.adversary_ratio;
    if (!cell.adversary_ratio) acfg.nodes = cfg.adversary_nodes;
    acfg.placement = cell.placement;
    acfg.active = cell.active;
    acfg.validate(g.num_nodes(), true);
    if (!acfg.nodes.empty()) place_adversaries(g, acfg, 0);
  }
  std::cout << "ok: " << expand_cells(cfg).size() << " cells x " << cfg.seeds.size()
            << " seeds x " << cfg.estimators.size()
            << " estimators = " << expected_rows(cfg) << " report rows\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gossip anonymity simulator"};
  app.require_subcommand(1);

  std::string config, out_dir, figure, plot_out;
  std::vector<std::string> reports;
  std::size_t parallel = 1;

  auto* run = app.add_subcommand("run", "Run an experiment and write report CSVs");
  run->add_option("--config", config, "Experiment config file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_path)");
  run->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

  auto* plot = app.add_subcommand("plot-data", "Turn a report CSV into long-format plot data");
  plot->add_option("--report", reports, "report.csv from a run (repeatable)")->required();
  plot->add_option("--figure", figure, "Preset: figure1 .. figure6")->required();
  plot->add_option("--out", plot_out, "Output file (default <report dir>/plot_<figure>.csv)");

  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("--config", config, "Experiment config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config, out_dir, parallel);
    if (*plot) return cmd_plot(reports, figure, plot_out);
    return cmd_validate(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
