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

#include "gossipsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "gossipsim/errors.hpp"
#include "gossipsim/sim_engine.hpp"
#include "text_util.hpp"

namespace gossipsim {

const std::vector<std::string> kReportColumns = {
    "topology",        "n",
    "k_or_m",          "protocol",
    "broadcast_mode",  "broadcast_probability",
    "adversary_ratio", "adversary_placement",
    "adversary_active", "estimator",
    "seed",            "num_msg",
    "num_unobserved",  "hit_ratio",
    "inverse_rank",    "entropy",
    "ndcg",            "message_spread_ratio"};

namespace {

// Sub-stream tags of a cell seed.
enum StreamTag : std::uint64_t {
  kGraphStream = 1,
  kWeightStream = 2,
  kAdversaryStream = 3,
  kAnonymityStream = 4,
  kOriginatorStream = 5,
  kMessageStream = 6,
};

// Everything shared by all cells of one seed.
struct SeedContext {
  Seed seed;
  NetworkGraph graph;
  std::vector<NodeId> degree_ranking;
  std::vector<NodeId> betweenness_ranking;
};

bool needs(const ExperimentConfig& cfg, Placement p) {
  return cfg.adversary_nodes.empty() &&
         std::find(cfg.placements.begin(), cfg.placements.end(), p) != cfg.placements.end();
}

SeedContext make_context(const ExperimentConfig& cfg, Seed seed) {
  SeedContext ctx{seed, build_graph(cfg, seed), {}, {}};
  if (needs(cfg, Placement::kDegree))
    ctx.degree_ranking = centrality_ranking(ctx.graph, CentralityMetric::kDegree);
  if (needs(cfg, Placement::kBetweenness))
    ctx.betweenness_ranking = centrality_ranking(ctx.graph, CentralityMetric::kBetweenness);
  return ctx;
}

std::vector<NodeId> adversaries_for(const ExperimentConfig& cfg, const Cell& cell,
                                    const SeedContext& ctx) {
  const NetworkGraph& g = ctx.graph;
  AdversaryConfig acfg;
  acfg.ratio = cell.adversary_ratio;
  if (!cell.adversary_ratio) acfg.nodes = cfg.adversary_nodes;
  acfg.placement = cell.placement;
  acfg.active = cell.active;
  acfg.validate(g.num_nodes(), true);
  if (!acfg.nodes.empty() || cell.placement == Placement::kRandom)
    return place_adversaries(g, acfg, derive_seed(ctx.seed, kAdversaryStream));
  const auto& ranking = cell.placement == Placement::kDegree ? ctx.degree_ranking
                                                             : ctx.betweenness_ranking;
  std::vector<NodeId> out(ranking.begin(),
                          ranking.begin() + static_cast<std::ptrdiff_t>(adversary_count(
                                                *cell.adversary_ratio, g.num_nodes())));
  std::sort(out.begin(), out.end());
  return out;
}

CellRun simulate(const ExperimentConfig& cfg, const Cell& cell, const SeedContext& ctx,
                 bool keep_logs) {
  const NetworkGraph& g = ctx.graph;
  cell.protocol.validate(g.num_nodes());
  CellRun run;
  run.adversaries = adversaries_for(cfg, cell, ctx);
  Adversary adversary(g.num_nodes(), run.adversaries, cell.active);
  auto protocol = make_protocol(g, cell.protocol, derive_seed(ctx.seed, kAnonymityStream));
  Engine engine(*protocol, &adversary, derive_seed(ctx.seed, kMessageStream));

  OriginatorSampler sampler(g, cfg.use_node_weights);
  if (cfg.use_node_weights) {
    double honest_weight = 0.0;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
      if (!adversary.is_adversarial(v)) honest_weight += g.node_weights()[v];
    if (!(honest_weight > 0.0))
      throw ConfigError("honest nodes carry no stake", "use_node_weights");
  }
  Rng origin_rng(derive_seed(ctx.seed, kOriginatorStream));

  run.estimates.resize(cfg.estimators.size());
  const bool refine = cfg.protocol_aware && is_dandelion(cell.protocol.kind);
  const AnonymityGraph* anon = protocol->anonymity_graph();
  for (MessageId id = 0; id < cfg.num_msg; ++id) {
    NodeId origin;
    do {
      origin = sampler.sample(origin_rng);
    } while (adversary.is_adversarial(origin));
    SimMessage msg = engine.spawn_message(id, origin);
    engine.run_message(msg);
    run.originators.push_back(origin);
    run.spread_ratios.push_back(msg.spread_ratio());
    run.censored.push_back(!msg.entered_broadcast());
    run.stem_lengths.push_back(msg.stem_length());

    const auto obs = adversary.observations(id);
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
      auto est = estimate(cfg.estimators[e], id, obs, g, adversary.mask());
      if (est && refine)
        est = refine_dandelion(*est, *anon, cell.protocol.broadcast_probability,
                               cell.protocol.stem_cap, adversary.mask());
      run.estimates[e].push_back(std::move(est));
    }
    if (keep_logs) run.observations.emplace_back(obs.begin(), obs.end());
    adversary.clear_log();
  }

  if (keep_logs && anon) run.anonymity_graph = *anon;
  for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
    std::vector<MessageResult> results(cfg.num_msg);
    for (std::size_t m = 0; m < cfg.num_msg; ++m)
      results[m] = {run.originators[m], run.estimates[e][m], run.spread_ratios[m]};
    run.reports.push_back(compute_report(std::string(to_string(cfg.estimators[e])),
                                         results, adversary.num_honest()));
  }
  return run;
}

MetricStats stats(const std::vector<double>& xs) {
  MetricStats s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

// Runs `count` jobs on `parallel` threads; rethrows the first failure.
template <typename Job>
void run_jobs(std::size_t count, std::size_t parallel, Job job) {
  parallel = std::max<std::size_t>(1, std::min(parallel, count));
  if (parallel == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < parallel; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<Cell> expand_cells(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  std::vector<std::optional<double>> ratios;
  if (cfg.adversary_nodes.empty()) {
    for (double f : cfg.adversary_ratios) ratios.emplace_back(f);
  } else {
    ratios.emplace_back(std::nullopt);
  }
  // Placement is meaningless for an explicit list.
  std::vector<Placement> placements = cfg.placements;
  if (!cfg.adversary_nodes.empty()) placements = {Placement::kRandom};

  for (ProtocolKind kind : cfg.protocols) {
    std::vector<double> probs = cfg.broadcast_probabilities;
    if (!is_dandelion(kind)) probs = {1.0};
    for (BroadcastMode mode : cfg.broadcast_modes) {
      for (double p : probs) {
        for (const auto& ratio : ratios) {
          for (Placement placement : placements) {
            for (bool active : cfg.active) {
              Cell c;
              c.protocol.kind = kind;
              c.protocol.broadcast_mode = mode;
              c.protocol.broadcast_probability = p;
              c.protocol.stem_cap = cfg.stem_cap;
              c.protocol.onion_path_len = cfg.onion_path_len;
              c.adversary_ratio = ratio;
              c.placement = placement;
              c.active = active;
              cells.push_back(c);
            }
          }
        }
      }
    }
  }
  return cells;
}

NetworkGraph build_graph(const ExperimentConfig& cfg, Seed seed) {
  NetworkGraph g = [&] {
    const Seed gs = derive_seed(seed, kGraphStream);
    switch (cfg.topology.kind) {
      case TopologyKind::kRegular:
        return gen_random_regular(cfg.topology.n, cfg.topology.k, gs);
      case TopologyKind::kScaleFree:
        return gen_scale_free(cfg.topology.n, cfg.topology.m, gs);
      case TopologyKind::kFile:
        break;
    }
    return load_graph(cfg.topology.path, cfg.topology.components);
  }();
  g = assign_weights(g, cfg.weights, derive_seed(seed, kWeightStream));
  if (cfg.node_weight_file) g = load_node_weights(g, *cfg.node_weight_file);
  return g;
}

CellRun run_cell(const ExperimentConfig& cfg, const Cell& cell, Seed seed, bool keep_logs) {
  Cell only = cell;
  ExperimentConfig c = cfg;
  c.placements = {cell.placement};
  return simulate(c, only, make_context(c, seed), keep_logs);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t parallel) {
  cfg.validate();
  const auto cells = expand_cells(cfg);
  const std::size_t num_seeds = cfg.seeds.size();

  std::vector<std::optional<SeedContext>> contexts(num_seeds);
  run_jobs(num_seeds, parallel,
           [&](std::size_t s) { contexts[s] = make_context(cfg, cfg.seeds[s]); });

  std::vector<CellRun> runs(cells.size() * num_seeds);
  run_jobs(runs.size(), parallel, [&](std::size_t i) {
    const std::size_t c = i / num_seeds, s = i % num_seeds;
    runs[i] = simulate(cfg, cells[c], *contexts[s], false);
    runs[i].estimates.clear();  // only the reports are kept
  });

  ExperimentResult result;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
      AggregateRow agg;
      std::vector<double> unobserved, hit, inv, ent, ndcg, spread;
      for (std::size_t s = 0; s < num_seeds; ++s) {
        const CellRun& run = runs[c * num_seeds + s];
        const SeedContext& ctx = *contexts[s];
        ReportRow row;
        row.topology = cfg.topology.kind;
        row.n = ctx.graph.num_nodes();
        if (cfg.topology.kind == TopologyKind::kRegular) row.k_or_m = cfg.topology.k;
        if (cfg.topology.kind == TopologyKind::kScaleFree) row.k_or_m = cfg.topology.m;
        row.cell = cells[c];
        row.adversary_ratio = cells[c].adversary_ratio
                                  ? *cells[c].adversary_ratio
                                  : static_cast<double>(run.adversaries.size()) /
                                        static_cast<double>(row.n);
        row.estimator = cfg.estimators[e];
        row.seed = cfg.seeds[s];
        row.report = run.reports[e];
        result.rows.push_back(row);

        unobserved.push_back(static_cast<double>(row.report.num_unobserved));
        hit.push_back(row.report.hit_ratio);
        inv.push_back(row.report.inverse_rank);
        ent.push_back(row.report.entropy);
        ndcg.push_back(row.report.ndcg);
        spread.push_back(row.report.message_spread_ratio);
        if (s == 0) agg.key = row;
      }
      agg.num_seeds = num_seeds;
      agg.num_unobserved = stats(unobserved);
      agg.hit_ratio = stats(hit);
      agg.inverse_rank = stats(inv);
      agg.entropy = stats(ent);
      agg.ndcg = stats(ndcg);
      agg.message_spread_ratio = stats(spread);
      result.aggregates.push_back(agg);
    }
  }
  return result;
}

// ---- CSV -----------------------------------------------------------------------

namespace {

using detail::format_double;

void write_key_columns(std::ostream& out, const ReportRow& r) {
  const Cell& c = r.cell;
  out << to_string(r.topology) << ',' << r.n << ',';
  if (r.k_or_m) out << *r.k_or_m;
  out << ',' << to_string(c.protocol.kind) << ',' << to_string(c.protocol.broadcast_mode)
      << ',';
  if (is_dandelion(c.protocol.kind)) out << format_double(c.protocol.broadcast_probability);
  out << ',' << format_double(r.adversary_ratio) << ','
      << (c.adversary_ratio ? to_string(c.placement) : std::string_view("explicit")) << ','
      << (c.active ? "true" : "false") << ',' << to_string(r.estimator);
}

}  // namespace

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  for (std::size_t i = 0; i < kReportColumns.size(); ++i)
    out << (i ? "," : "") << kReportColumns[i];
  out << '\n';
  for (const ReportRow& r : rows) {
    write_key_columns(out, r);
    const EvaluationReport& m = r.report;
    out << ',' << r.seed << ',' << m.num_msg << ',' << m.num_unobserved << ','
        << format_double(m.hit_ratio) << ',' << format_double(m.inverse_rank) << ','
        << format_double(m.entropy) << ',' << format_double(m.ndcg) << ','
        << format_double(m.message_spread_ratio) << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "topology,n,k_or_m,protocol,broadcast_mode,broadcast_probability,"
         "adversary_ratio,adversary_placement,adversary_active,estimator,num_seeds,"
         "num_msg";
  for (const char* m : {"num_unobserved", "hit_ratio", "inverse_rank", "entropy", "ndcg",
                        "message_spread_ratio"})
    out << ',' << m << "_mean," << m << "_std";
  out << '\n';
  for (const AggregateRow& a : rows) {
    write_key_columns(out, a.key);
    out << ',' << a.num_seeds << ',' << a.key.report.num_msg;
    for (const MetricStats* s : {&a.num_unobserved, &a.hit_ratio, &a.inverse_rank,
                                 &a.entropy, &a.ndcg, &a.message_spread_ratio})
      out << ',' << format_double(s->mean) << ',' << format_double(s->std);
    out << '\n';
  }
}

}  // namespace gossipsim
