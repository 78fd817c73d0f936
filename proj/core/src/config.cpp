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

#include "gossipsim/config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "gossipsim/errors.hpp"
#include "text_util.hpp"

namespace gossipsim {

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kRegular:
      return "regular";
    case TopologyKind::kScaleFree:
      return "scale_free";
    case TopologyKind::kFile:
      return "file";
  }
  return "?";
}

namespace {

using detail::split;

std::vector<std::string_view> list_of(std::string_view value, const std::string& key) {
  auto items = split(value, ',');
  for (auto item : items)
    if (item.empty()) throw ConfigError("empty list element", key);
  return items;
}

double to_double(std::string_view s, const std::string& key) {
  auto v = detail::parse_double(s);
  if (!v || !std::isfinite(*v))
    throw ConfigError("expected a number, got `" + std::string(s) + "`", key);
  return *v;
}

std::uint64_t to_u64(std::string_view s, const std::string& key) {
  auto v = detail::parse_u64(s);
  if (!v) throw ConfigError("expected a non-negative integer, got `" + std::string(s) + "`", key);
  return *v;
}

bool to_bool(std::string_view s, const std::string& key) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("expected true or false, got `" + std::string(s) + "`", key);
}

template <typename T, typename Parse>
T to_enum(std::string_view s, const std::string& key, Parse parse) {
  auto v = parse(s);
  if (!v) throw ConfigError("unknown value `" + std::string(s) + "`", key);
  return *v;
}

template <typename T, typename F>
std::vector<T> map_list(std::string_view value, const std::string& key, F f) {
  std::vector<T> out;
  for (auto item : list_of(value, key)) out.push_back(f(item));
  return out;
}

std::vector<Seed> parse_seeds(std::string_view value, const std::string& key) {
  std::vector<Seed> out;
  for (auto item : list_of(value, key)) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(to_u64(item, key));
      continue;
    }
    const Seed lo = to_u64(detail::trim(item.substr(0, dots)), key);
    const Seed hi = to_u64(detail::trim(item.substr(dots + 2)), key);
    if (hi < lo) throw ConfigError("empty seed range", key);
    if (hi - lo > 1'000'000) throw ConfigError("seed range too large", key);
    for (Seed s = lo; s <= hi; ++s) out.push_back(s);
  }
  return out;
}

template <typename T>
void require_unique(const std::vector<T>& v, const std::string& key) {
  std::set<T> seen(v.begin(), v.end());
  if (seen.size() != v.size()) throw ConfigError("duplicate list value", key);
}

}  // namespace

void ExperimentConfig::validate() const {
  switch (topology.kind) {
    case TopologyKind::kRegular:
      if (topology.k < 3 || topology.k >= topology.n)
        throw ConfigError("need 3 <= k < n", "topology.k");
      if ((topology.n * topology.k) % 2 != 0)
        throw ConfigError("n*k must be even", "topology.k");
      break;
    case TopologyKind::kScaleFree:
      if (topology.m < 1 || topology.m >= topology.n)
        throw ConfigError("need 1 <= m < n", "topology.m");
      break;
    case TopologyKind::kFile:
      if (topology.path.empty()) throw ConfigError("missing", "topology.path");
      break;
  }
  try {
    weights.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what(), "weights");
  }
  if (protocols.empty()) throw ConfigError("missing", "protocol.kind");
  if (broadcast_modes.empty()) throw ConfigError("missing", "protocol.broadcast_mode");
  if (broadcast_probabilities.empty())
    throw ConfigError("missing", "protocol.broadcast_probability");
  for (double p : broadcast_probabilities)
    if (!(p > 0.0 && p <= 1.0))
      throw ConfigError("must be in (0, 1]", "protocol.broadcast_probability");
  if (stem_cap < 1) throw ConfigError("must be >= 1", "protocol.stem_cap");
  if (onion_path_len < 1) throw ConfigError("must be >= 1", "protocol.onion_path_len");
  const bool generated = topology.kind != TopologyKind::kFile;
  for (ProtocolKind k : protocols)
    if (k == ProtocolKind::kOnion && generated && onion_path_len + 2 > topology.n)
      throw ConfigError("must be <= N-2", "protocol.onion_path_len");

  if (estimators.empty()) throw ConfigError("missing", "estimator");
  if (!adversary_ratios.empty() && !adversary_nodes.empty())
    throw ConfigError("ratio and explicit node list are mutually exclusive",
                      "adversary.ratio");
  if (adversary_ratios.empty() && adversary_nodes.empty())
    throw ConfigError("estimation requires adversarial nodes", "adversary.ratio");
  for (double f : adversary_ratios) {
    if (!(f >= 0.0 && f < 1.0)) throw ConfigError("must be in [0, 1)", "adversary.ratio");
    if (generated && adversary_count(f, topology.n) < 1)
      throw ConfigError("ratio " + detail::format_double(f) +
                            " corrupts no node but estimation was requested",
                        "adversary.ratio");
    if (!generated && f == 0.0)
      throw ConfigError("ratio 0 corrupts no node but estimation was requested",
                        "adversary.ratio");
  }
  if (generated)
    for (NodeId v : adversary_nodes)
      if (v >= topology.n)
        throw ConfigError("unknown node " + std::to_string(v), "adversary.nodes");
  if (placements.empty()) throw ConfigError("missing", "adversary.placement");
  if (active.empty()) throw ConfigError("missing", "adversary.active");
  if (num_msg < 1) throw ConfigError("must be >= 1", "num_msg");
  if (seeds.empty()) throw ConfigError("seed list must not be empty", "seeds");
}

ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  bool have_topology_kind = false, have_seeds = false;
  auto resolve = [&](std::string_view p) {
    std::filesystem::path path{std::string(p)};
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    return path;
  };

  using Handler = std::function<void(std::string_view, const std::string&)>;
  const std::map<std::string, Handler, std::less<>> handlers = {
      {"topology.kind",
       [&](auto v, const auto& k) {
         have_topology_kind = true;
         if (v == "regular") cfg.topology.kind = TopologyKind::kRegular;
         else if (v == "scale_free") cfg.topology.kind = TopologyKind::kScaleFree;
         else if (v == "file") cfg.topology.kind = TopologyKind::kFile;
         else throw ConfigError("unknown value `" + std::string(v) + "`", k);
       }},
      {"topology.n", [&](auto v, const auto& k) { cfg.topology.n = to_u64(v, k); }},
      {"topology.k", [&](auto v, const auto& k) { cfg.topology.k = to_u64(v, k); }},
      {"topology.m", [&](auto v, const auto& k) { cfg.topology.m = to_u64(v, k); }},
      {"topology.path", [&](auto v, const auto&) { cfg.topology.path = resolve(v); }},
      {"topology.components",
       [&](auto v, const auto& k) {
         if (v == "largest") cfg.topology.components = ComponentPolicy::kLargest;
         else if (v == "reject") cfg.topology.components = ComponentPolicy::kReject;
         else throw ConfigError("unknown value `" + std::string(v) + "`", k);
       }},
      {"weights.node",
       [&](auto v, const auto& k) {
         if (v == "stake") cfg.weights.node_mode = NodeWeightMode::kStake;
         else if (v == "uniform") cfg.weights.node_mode = NodeWeightMode::kUniform;
         else throw ConfigError("unknown value `" + std::string(v) + "`", k);
       }},
      {"weights.edge",
       [&](auto v, const auto& k) {
         if (v == "normal") cfg.weights.edge_mode = EdgeWeightMode::kNormal;
         else if (v == "uniform") cfg.weights.edge_mode = EdgeWeightMode::kUniform;
         else if (v == "unweighted") cfg.weights.edge_mode = EdgeWeightMode::kUnweighted;
         else throw ConfigError("unknown value `" + std::string(v) + "`", k);
       }},
      {"weights.normal_mean_ms",
       [&](auto v, const auto& k) { cfg.weights.normal_mean_ms = to_double(v, k); }},
      {"weights.normal_std_ms",
       [&](auto v, const auto& k) { cfg.weights.normal_std_ms = to_double(v, k); }},
      {"weights.stake_mu",
       [&](auto v, const auto& k) { cfg.weights.stake_lognormal_mu = to_double(v, k); }},
      {"weights.stake_sigma",
       [&](auto v, const auto& k) { cfg.weights.stake_lognormal_sigma = to_double(v, k); }},
      {"weights.node_file", [&](auto v, const auto&) { cfg.node_weight_file = resolve(v); }},
      {"protocol.kind",
       [&](auto v, const auto& k) {
         cfg.protocols = map_list<ProtocolKind>(v, k, [&](auto s) {
           return to_enum<ProtocolKind>(s, k, parse_protocol_kind);
         });
         require_unique(cfg.protocols, k);
       }},
      {"protocol.broadcast_mode",
       [&](auto v, const auto& k) {
         cfg.broadcast_modes = map_list<BroadcastMode>(v, k, [&](auto s) {
           return to_enum<BroadcastMode>(s, k, parse_broadcast_mode);
         });
         require_unique(cfg.broadcast_modes, k);
       }},
      {"protocol.broadcast_probability",
       [&](auto v, const auto& k) {
         cfg.broadcast_probabilities =
             map_list<double>(v, k, [&](auto s) { return to_double(s, k); });
         require_unique(cfg.broadcast_probabilities, k);
       }},
      {"protocol.stem_cap",
       [&](auto v, const auto& k) { cfg.stem_cap = static_cast<std::uint32_t>(to_u64(v, k)); }},
      {"protocol.onion_path_len",
       [&](auto v, const auto& k) {
         cfg.onion_path_len = static_cast<std::uint32_t>(to_u64(v, k));
       }},
      {"adversary.ratio",
       [&](auto v, const auto& k) {
         cfg.adversary_ratios = map_list<double>(v, k, [&](auto s) { return to_double(s, k); });
         require_unique(cfg.adversary_ratios, k);
       }},
      {"adversary.nodes",
       [&](auto v, const auto& k) {
         cfg.adversary_nodes = map_list<NodeId>(
             v, k, [&](auto s) { return static_cast<NodeId>(to_u64(s, k)); });
         require_unique(cfg.adversary_nodes, k);
       }},
      {"adversary.placement",
       [&](auto v, const auto& k) {
         cfg.placements = map_list<Placement>(
             v, k, [&](auto s) { return to_enum<Placement>(s, k, parse_placement); });
         require_unique(cfg.placements, k);
       }},
      {"adversary.active",
       [&](auto v, const auto& k) {
         cfg.active = map_list<bool>(v, k, [&](auto s) { return to_bool(s, k); });
         require_unique(cfg.active, k);
       }},
      {"adversary.protocol_aware",
       [&](auto v, const auto& k) { cfg.protocol_aware = to_bool(v, k); }},
      {"estimator",
       [&](auto v, const auto& k) {
         cfg.estimators = map_list<EstimatorKind>(
             v, k, [&](auto s) { return to_enum<EstimatorKind>(s, k, parse_estimator); });
         require_unique(cfg.estimators, k);
       }},
      {"num_msg", [&](auto v, const auto& k) { cfg.num_msg = to_u64(v, k); }},
      {"seeds",
       [&](auto v, const auto& k) {
         have_seeds = true;
         cfg.seeds = parse_seeds(v, k);
       }},
      {"use_node_weights",
       [&](auto v, const auto& k) { cfg.use_node_weights = to_bool(v, k); }},
      {"output_path", [&](auto v, const auto&) { cfg.output_path = resolve(v); }},
  };

  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected `key = value`");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    auto it = handlers.find(key);
    if (it == handlers.end()) throw ConfigError("unknown key", key);
    if (!seen.insert(key).second) throw ConfigError("duplicate key", key);
    if (value.empty()) throw ConfigError("empty value", key);
    it->second(value, key);
  }
  if (!have_topology_kind) throw ConfigError("missing", "topology.kind");
  if (!have_seeds) throw ConfigError("missing", "seeds");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  return parse_config(text, path.parent_path());
}

}  // namespace gossipsim
