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

#include "gossipsim/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gossipsim/errors.hpp"

namespace gossipsim {

std::string_view to_string(Placement placement) {
  switch (placement) {
    case Placement::kRandom:
      return "random";
    case Placement::kDegree:
      return "degree";
    case Placement::kBetweenness:
      return "betweenness";
  }
  return "?";
}

std::optional<Placement> parse_placement(std::string_view s) {
  if (s == "random") return Placement::kRandom;
  if (s == "degree") return Placement::kDegree;
  if (s == "betweenness") return Placement::kBetweenness;
  return std::nullopt;
}

std::size_t adversary_count(double ratio, std::size_t num_nodes) {
  // Nudge so that e.g. 0.1 * 100 lands on 10 rather than 9.999...
  return static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(num_nodes) + 1e-9));
}

void AdversaryConfig::validate(std::size_t num_nodes, bool estimation_requested) const {
  if (ratio && !nodes.empty())
    throw ConfigError("ratio and explicit node list are mutually exclusive",
                      "adversary.ratio");
  if (!ratio && nodes.empty()) {
    if (estimation_requested)
      throw ConfigError("estimation requires at least one adversarial node",
                        "adversary.ratio");
    return;
  }
  if (ratio) {
    if (!(*ratio >= 0.0 && *ratio < 1.0))
      throw ConfigError("ratio must be in [0, 1)", "adversary.ratio");
    if (estimation_requested && adversary_count(*ratio, num_nodes) < 1)
      throw ConfigError("ratio corrupts no node but estimation was requested",
                        "adversary.ratio");
  } else {
    for (NodeId v : nodes)
      if (v >= num_nodes)
        throw ConfigError("unknown node " + std::to_string(v), "adversary.nodes");
    if (nodes.size() >= num_nodes)
      throw ConfigError("at least one node must stay honest", "adversary.nodes");
  }
}

std::vector<NodeId> place_adversaries(const NetworkGraph& g,
                                      const AdversaryConfig& cfg, Seed seed) {
  if (!cfg.nodes.empty()) {
    std::vector<NodeId> out = cfg.nodes;
    for (NodeId v : out)
      if (!g.contains(v))
        throw ParameterError("adversary list contains unknown node " +
                             std::to_string(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  const std::size_t count = adversary_count(cfg.ratio.value_or(0.0), g.num_nodes());
  std::vector<NodeId> out;
  switch (cfg.placement) {
    case Placement::kRandom: {
      std::vector<NodeId> all(g.num_nodes());
      std::iota(all.begin(), all.end(), NodeId{0});
      Rng rng(seed);
      out = rng.sample(all, count);
      break;
    }
    case Placement::kDegree:
      out = get_central_nodes(g, count, CentralityMetric::kDegree);
      break;
    case Placement::kBetweenness:
      out = get_central_nodes(g, count, CentralityMetric::kBetweenness);
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Adversary::Adversary(std::size_t num_nodes, std::vector<NodeId> nodes, bool active)
    : nodes_(std::move(nodes)), mask_(num_nodes, 0), active_(active) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  for (NodeId v : nodes_) {
    if (v >= num_nodes) throw ParameterError("adversarial node out of range");
    mask_[v] = 1;
  }
}

std::vector<NodeId> Adversary::honest_nodes() const {
  std::vector<NodeId> out;
  out.reserve(num_honest());
  for (NodeId v = 0; v < mask_.size(); ++v)
    if (!mask_[v]) out.push_back(v);
  return out;
}

bool Adversary::observe(const SimEvent& ev) {
  Observation obs;
  obs.message_id = ev.message_id;
  obs.observer = ev.to_node;
  obs.sender = ev.from_node;
  obs.arrival = ev.deliver_at;
  obs.phase_at_send = ev.phase_at_send;
  obs.linkable = ev.phase_at_send != Phase::kCircuit;
  log_[ev.message_id].push_back(obs);
  return active_;
}

std::span<const Observation> Adversary::observations(MessageId id) const {
  auto it = log_.find(id);
  if (it == log_.end()) return {};
  return it->second;
}

std::size_t Adversary::num_observations() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, obs] : log_) n += obs.size();
  return n;
}

}  // namespace gossipsim
