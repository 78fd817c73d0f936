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

#include "gossipsim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gossipsim/errors.hpp"

namespace gossipsim {

CandidateDistribution CandidateDistribution::point_mass(MessageId id, NodeId node) {
  CandidateDistribution d;
  d.message_id_ = id;
  d.ranked_.push_back({node, 1.0});
  return d;
}

CandidateDistribution CandidateDistribution::uniform(MessageId id,
                                                     std::span<const NodeId> nodes) {
  std::vector<std::pair<NodeId, double>> w;
  w.reserve(nodes.size());
  for (NodeId v : nodes) w.emplace_back(v, 1.0);
  return from_weights(id, std::move(w));
}

CandidateDistribution CandidateDistribution::from_weights(
    MessageId id, std::vector<std::pair<NodeId, double>> weights) {
  std::erase_if(weights, [](const auto& e) { return !(e.second > 0.0); });
  if (weights.empty()) throw ParameterError("distribution has no positive mass");
  std::sort(weights.begin(), weights.end());
  for (std::size_t i = 1; i < weights.size(); ++i)
    if (weights[i].first == weights[i - 1].first)
      throw ParameterError("candidate listed twice");
  double total = 0.0;
  for (const auto& [v, w] : weights) total += w;
  CandidateDistribution d;
  d.message_id_ = id;
  d.ranked_.reserve(weights.size());
  for (const auto& [v, w] : weights) d.ranked_.push_back({v, w / total});
  std::stable_sort(d.ranked_.begin(), d.ranked_.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.probability > b.probability;
                   });
  return d;
}

double CandidateDistribution::probability(NodeId node) const {
  for (const Candidate& c : ranked_)
    if (c.node == node) return c.probability;
  return 0.0;
}

double CandidateDistribution::entropy_bits() const {
  double h = 0.0;
  for (const Candidate& c : ranked_)
    if (c.probability > 0.0) h -= c.probability * std::log2(c.probability);
  return h;
}

std::string_view to_string(EstimatorKind kind) {
  return kind == EstimatorKind::kFirstReach ? "first_reach" : "first_sent";
}

std::optional<EstimatorKind> parse_estimator(std::string_view s) {
  if (s == "first_reach") return EstimatorKind::kFirstReach;
  if (s == "first_sent") return EstimatorKind::kFirstSent;
  return std::nullopt;
}

namespace {

bool usable(const Observation& o, std::span<const std::uint8_t> adversarial) {
  if (!o.linkable) return false;
  return adversarial.empty() || !adversarial[o.sender];
}

// Sender minimizing key(o); ties go to the lowest sender id.
template <typename Key>
std::optional<CandidateDistribution> argmin_sender(MessageId id,
                                                   std::span<const Observation> obs,
                                                   std::span<const std::uint8_t> adversarial,
                                                   Key key) {
  std::optional<NodeId> best;
  double best_key = std::numeric_limits<double>::infinity();
  for (const Observation& o : obs) {
    if (!usable(o, adversarial)) continue;
    const double k = key(o);
    if (!best || k < best_key || (k == best_key && o.sender < *best)) {
      best = o.sender;
      best_key = k;
    }
  }
  if (!best) return std::nullopt;
  return CandidateDistribution::point_mass(id, *best);
}

}  // namespace

std::optional<CandidateDistribution> estimate_first_reach(
    MessageId id, std::span<const Observation> obs,
    std::span<const std::uint8_t> adversarial) {
  return argmin_sender(id, obs, adversarial,
                       [](const Observation& o) { return o.arrival; });
}

std::optional<CandidateDistribution> estimate_first_sent(
    MessageId id, std::span<const Observation> obs, const NetworkGraph& g,
    std::span<const std::uint8_t> adversarial) {
  return argmin_sender(id, obs, adversarial, [&](const Observation& o) {
    return o.arrival - g.latency(o.sender, o.observer);
  });
}

std::optional<CandidateDistribution> estimate(EstimatorKind kind, MessageId id,
                                              std::span<const Observation> obs,
                                              const NetworkGraph& g,
                                              std::span<const std::uint8_t> adversarial) {
  return kind == EstimatorKind::kFirstReach
             ? estimate_first_reach(id, obs, adversarial)
             : estimate_first_sent(id, obs, g, adversarial);
}

CandidateDistribution refine_dandelion(const CandidateDistribution& base,
                                       const AnonymityGraph& anon,
                                       double broadcast_probability,
                                       std::uint32_t stem_cap,
                                       std::span<const std::uint8_t> adversarial) {
  const NodeId v = base.top();
  const std::size_t n = anon.num_nodes();
  const double stay = 1.0 - broadcast_probability;
  auto blocked = [&](NodeId u) { return !adversarial.empty() && adversarial[u]; };

  // level[u]: summed weight of all k-hop stem paths from u to v.
  std::vector<double> total(n, 0.0), level(n, 0.0), next(n, 0.0);
  std::vector<NodeId> frontier{v}, next_frontier;
  std::vector<std::uint8_t> in_next(n, 0);
  level[v] = 1.0;
  total[v] = 1.0;
  for (std::uint32_t k = 1; k <= stem_cap && stay > 0.0 && !frontier.empty(); ++k) {
    next_frontier.clear();
    for (NodeId s : frontier) {
      for (NodeId u : anon.predecessors(s)) {
        if (blocked(u)) continue;
        next[u] += level[s] * stay;
        if (!in_next[u]) {
          in_next[u] = 1;
          next_frontier.push_back(u);
        }
      }
    }
    for (NodeId s : frontier) level[s] = 0.0;
    for (NodeId u : next_frontier) {
      level[u] = next[u];
      total[u] += next[u];
      next[u] = 0.0;
      in_next[u] = 0;
    }
    std::swap(frontier, next_frontier);
  }

  std::vector<std::pair<NodeId, double>> weights;
  for (NodeId u = 0; u < n; ++u)
    if (total[u] > 0.0 && !blocked(u)) weights.emplace_back(u, total[u]);
  if (weights.empty()) return base;
  return CandidateDistribution::from_weights(base.message_id(), std::move(weights));
}

}  // namespace gossipsim
