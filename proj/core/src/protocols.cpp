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

#include "gossipsim/protocols.hpp"

#include <algorithm>
#include <cmath>

#include "gossipsim/errors.hpp"

namespace gossipsim {

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kBroadcast:
      return "broadcast";
    case ProtocolKind::kDandelion:
      return "dandelion";
    case ProtocolKind::kDandelionPP:
      return "dandelion_pp";
    case ProtocolKind::kOnion:
      return "onion";
  }
  return "?";
}

std::string_view to_string(BroadcastMode mode) {
  return mode == BroadcastMode::kAll ? "all" : "sqrt";
}

std::optional<ProtocolKind> parse_protocol_kind(std::string_view s) {
  if (s == "broadcast") return ProtocolKind::kBroadcast;
  if (s == "dandelion") return ProtocolKind::kDandelion;
  if (s == "dandelion_pp" || s == "dandelion++") return ProtocolKind::kDandelionPP;
  if (s == "onion") return ProtocolKind::kOnion;
  return std::nullopt;
}

std::optional<BroadcastMode> parse_broadcast_mode(std::string_view s) {
  if (s == "all") return BroadcastMode::kAll;
  if (s == "sqrt") return BroadcastMode::kSqrt;
  return std::nullopt;
}

void ProtocolConfig::validate(std::size_t num_nodes) const {
  if (!(broadcast_probability > 0.0 && broadcast_probability <= 1.0))
    throw ConfigError("must be in (0, 1]", "protocol.broadcast_probability");
  if (stem_cap < 1) throw ConfigError("must be >= 1", "protocol.stem_cap");
  if (kind == ProtocolKind::kOnion) {
    if (onion_path_len < 1) throw ConfigError("must be >= 1", "protocol.onion_path_len");
    if (num_nodes < 2 || onion_path_len > num_nodes - 2)
      throw ConfigError("must be <= N-2", "protocol.onion_path_len");
  }
}

// ---- anonymity graph ---------------------------------------------------------

AnonymityGraph::AnonymityGraph(std::vector<std::array<NodeId, 2>> successors,
                               std::vector<std::uint8_t> counts, Seed epoch_seed)
    : successors_(std::move(successors)),
      counts_(std::move(counts)),
      epoch_seed_(epoch_seed) {
  const std::size_t n = counts_.size();
  pred_offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t i = 0; i < counts_[u]; ++i) ++pred_offsets_[successors_[u][i] + 1];
  for (std::size_t v = 0; v < n; ++v) pred_offsets_[v + 1] += pred_offsets_[v];
  pred_.resize(pred_offsets_.back());
  std::vector<std::size_t> cursor(pred_offsets_.begin(), pred_offsets_.end() - 1);
  // u ascends, so each predecessor list comes out sorted.
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t i = 0; i < counts_[u]; ++i)
      pred_[cursor[successors_[u][i]]++] = static_cast<NodeId>(u);
}

NodeId AnonymityGraph::relay_for(NodeId node, MessageId id) const {
  if (counts_[node] == 1) return successors_[node][0];
  const std::uint64_t h = derive_seed(derive_seed(epoch_seed_, id), node);
  return successors_[node][h & 1];
}

AnonymityGraph build_anonymity_graph(const NetworkGraph& g, ProtocolKind kind,
                                     Seed seed) {
  if (!is_dandelion(kind))
    throw ParameterError("anonymity graphs exist for Dandelion variants only");
  const std::size_t n = g.num_nodes();
  std::vector<std::array<NodeId, 2>> succ(n, {0, 0});
  std::vector<std::uint8_t> counts(n, 0);
  Rng rng(seed);
  for (NodeId v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    if (nb.empty()) continue;
    const std::size_t i = rng.index(nb.size());
    succ[v][0] = nb[i];
    counts[v] = 1;
    if (kind == ProtocolKind::kDandelionPP && nb.size() >= 2) {
      std::size_t j = rng.index(nb.size() - 1);
      if (j >= i) ++j;
      succ[v][1] = nb[j];
      counts[v] = 2;
    }
  }
  return AnonymityGraph(std::move(succ), std::move(counts), seed);
}

// ---- broadcast ---------------------------------------------------------------

void emit_broadcast(const NetworkGraph& g, BroadcastMode mode, SimMessage& msg,
                    NodeId node, std::optional<NodeId> sender, TimeMs now,
                    std::uint32_t stem_hops) {
  if (!msg.mark_broadcast(node, now, stem_hops)) return;
  auto nb = g.neighbors(node);
  auto lat = g.neighbor_latencies(node);
  const std::size_t degree = nb.size();

  if (mode == BroadcastMode::kAll) {
    for (std::size_t i = 0; i < degree; ++i) {
      if (sender && nb[i] == *sender) continue;
      msg.send(node, nb[i], Phase::kBroadcast, 0, now, lat[i]);
    }
    return;
  }

  const auto fanout = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(degree))));
  // Candidate positions into the neighbor list.
  auto& pool = msg.scratch();
  pool.clear();
  const bool exclude_sender = sender && degree > fanout;
  for (std::size_t i = 0; i < degree; ++i) {
    if (exclude_sender && nb[i] == *sender) continue;
    pool.push_back(static_cast<NodeId>(i));
  }
  const std::size_t take = std::min(fanout, pool.size());
  Rng& rng = msg.fanout_rng();
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + rng.index(pool.size() - i);
    std::swap(pool[i], pool[j]);
    const std::size_t pos = pool[i];
    msg.send(node, nb[pos], Phase::kBroadcast, 0, now, lat[pos]);
  }
}

void BroadcastProtocol::on_spawn(SimMessage& msg, TimeMs now) const {
  emit_broadcast(graph_, mode_, msg, msg.originator(), std::nullopt, now);
}

void BroadcastProtocol::on_receive(SimMessage& msg, const SimEvent& ev) const {
  emit_broadcast(graph_, mode_, msg, ev.to_node, ev.from_node, ev.deliver_at);
}

// ---- dandelion ---------------------------------------------------------------

DandelionProtocol::DandelionProtocol(const NetworkGraph& g, const ProtocolConfig& cfg,
                                     AnonymityGraph anon)
    : Protocol(g), cfg_(cfg), anon_(std::move(anon)) {
  if (!is_dandelion(cfg.kind)) throw ParameterError("not a Dandelion configuration");
  cfg_.validate(g.num_nodes());
  if (anon_.num_nodes() != g.num_nodes())
    throw ParameterError("anonymity graph does not match the network");
}

void DandelionProtocol::stem_step(SimMessage& msg, NodeId node,
                                  std::optional<NodeId> sender, std::uint32_t hop,
                                  TimeMs now) const {
  const double u = msg.coin_rng().uniform();
  if (u < cfg_.broadcast_probability || hop >= cfg_.stem_cap) {
    emit_broadcast(graph_, cfg_.broadcast_mode, msg, node, sender, now, hop);
    return;
  }
  const NodeId next = cfg_.kind == ProtocolKind::kDandelionPP
                          ? anon_.relay_for(node, msg.id())
                          : anon_.successors(node)[0];
  msg.send(node, next, Phase::kStem, hop + 1, now, graph_.latency(node, next));
}

void DandelionProtocol::on_spawn(SimMessage& msg, TimeMs now) const {
  stem_step(msg, msg.originator(), std::nullopt, 0, now);
}

void DandelionProtocol::on_receive(SimMessage& msg, const SimEvent& ev) const {
  if (ev.phase_at_send == Phase::kStem) {
    stem_step(msg, ev.to_node, ev.from_node, ev.hop, ev.deliver_at);
  } else {
    emit_broadcast(graph_, cfg_.broadcast_mode, msg, ev.to_node, ev.from_node,
                   ev.deliver_at);
  }
}

// ---- onion -------------------------------------------------------------------

OnionProtocol::OnionProtocol(const NetworkGraph& g, const ProtocolConfig& cfg)
    : Protocol(g), cfg_(cfg) {
  if (cfg.kind != ProtocolKind::kOnion) throw ParameterError("not an onion configuration");
  cfg_.validate(g.num_nodes());
}

void OnionProtocol::on_spawn(SimMessage& msg, TimeMs now) const {
  const NodeId origin = msg.originator();
  auto& pool = msg.scratch();
  pool.clear();
  for (NodeId v = 0; v < graph_.num_nodes(); ++v)
    if (v != origin) pool.push_back(v);
  auto relays = msg.route_rng().sample(pool, cfg_.onion_path_len);
  msg.circuit() = std::move(relays);
  const NodeId first = msg.circuit().front();
  msg.send(origin, first, Phase::kCircuit, 0, now,
           shortest_path_latency(graph_, origin, first));
}

void OnionProtocol::on_receive(SimMessage& msg, const SimEvent& ev) const {
  if (ev.phase_at_send != Phase::kCircuit) {
    emit_broadcast(graph_, cfg_.broadcast_mode, msg, ev.to_node, ev.from_node,
                   ev.deliver_at);
    return;
  }
  const auto& circuit = msg.circuit();
  const std::uint32_t next = ev.hop + 1;
  if (next < circuit.size()) {
    msg.send(ev.to_node, circuit[next], Phase::kCircuit, next, ev.deliver_at,
             shortest_path_latency(graph_, ev.to_node, circuit[next]));
  } else {
    emit_broadcast(graph_, cfg_.broadcast_mode, msg, ev.to_node, ev.from_node,
                   ev.deliver_at, next);
  }
}

std::unique_ptr<Protocol> make_protocol(const NetworkGraph& g,
                                        const ProtocolConfig& cfg, Seed seed) {
  cfg.validate(g.num_nodes());
  switch (cfg.kind) {
    case ProtocolKind::kBroadcast:
      return std::make_unique<BroadcastProtocol>(g, cfg.broadcast_mode);
    case ProtocolKind::kDandelion:
    case ProtocolKind::kDandelionPP:
      return std::make_unique<DandelionProtocol>(
          g, cfg, build_anonymity_graph(g, cfg.kind, seed));
    case ProtocolKind::kOnion:
      return std::make_unique<OnionProtocol>(g, cfg);
  }
  throw ParameterError("unknown protocol kind");
}

}  // namespace gossipsim
