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

// Batch runner: expands a config's sweep axes into cells, simulates every
// (cell, seed) and evaluates each requested estimator on the same runs.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gossipsim/adversary.hpp"
#include "gossipsim/config.hpp"
#include "gossipsim/evaluator.hpp"
#include "gossipsim/protocols.hpp"

namespace gossipsim {

// One point of the sweep product. Axes that do not apply to a protocol are
// collapsed (e.g. broadcast probability for broadcast / onion), so the cell
// list has no duplicates.
struct Cell {
  ProtocolConfig protocol;
  std::optional<double> adversary_ratio;  // empty: explicit node list
  Placement placement = Placement::kRandom;
  bool active = false;
};

std::vector<Cell> expand_cells(const ExperimentConfig& cfg);

struct ReportRow {
  TopologyKind topology = TopologyKind::kRegular;
  std::size_t n = 0;
  std::optional<std::size_t> k_or_m;
  Cell cell;
  double adversary_ratio = 0.0;  // realized |adversaries| / N for explicit lists
  EstimatorKind estimator = EstimatorKind::kFirstSent;
  Seed seed = 0;
  EvaluationReport report;
};

struct MetricStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation over seeds (0 for one seed)
};

struct AggregateRow {
  ReportRow key;  // seed and report fields unused
  std::size_t num_seeds = 0;
  MetricStats num_unobserved, hit_ratio, inverse_rank, entropy, ndcg,
      message_spread_ratio;
};

struct ExperimentResult {
  // Ordered by cell, then estimator, then seed (config order throughout).
  std::vector<ReportRow> rows;
  // One per (cell, estimator), same order.
  std::vector<AggregateRow> aggregates;
};

// Per-message detail of one simulated (cell, seed); exposed for tests and
// diagnostics.
struct CellRun {
  std::vector<NodeId> adversaries;
  std::vector<NodeId> originators;
  std::vector<double> spread_ratios;
  std::vector<bool> censored;  // never left the anonymity phase
  std::vector<std::optional<std::uint32_t>> stem_lengths;
  // estimates[e][m] for estimator e of the config, message m.
  std::vector<std::vector<std::optional<CandidateDistribution>>> estimates;
  std::vector<EvaluationReport> reports;  // per estimator
  // Filled only when requested from run_cell.
  std::vector<std::vector<Observation>> observations;  // per message
  std::optional<AnonymityGraph> anonymity_graph;
};

// Simulates one cell for one seed. Throws ConfigError when the cell does not
// fit the generated graph. `keep_logs` retains the raw observation logs and
// the anonymity graph.
CellRun run_cell(const ExperimentConfig& cfg, const Cell& cell, Seed seed,
                 bool keep_logs = false);

// `parallel` worker threads (>= 1). Output does not depend on it.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t parallel = 1);

// Builds the (weighted) graph a seed uses.
NetworkGraph build_graph(const ExperimentConfig& cfg, Seed seed);

// Report CSV, header included. Columns: topology, n, k_or_m, protocol,
// broadcast_mode, broadcast_probability, adversary_ratio, adversary_placement,
// adversary_active, estimator, seed, num_msg, num_unobserved, hit_ratio,
// inverse_rank, entropy, ndcg, message_spread_ratio.
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

extern const std::vector<std::string> kReportColumns;

}  // namespace gossipsim
