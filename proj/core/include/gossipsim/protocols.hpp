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

// Message-spreading strategies. A protocol is immutable after construction;
// all per-message randomness lives in the SimMessage streams.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gossipsim/message.hpp"
#include "gossipsim/network.hpp"

namespace gossipsim {

enum class ProtocolKind { kBroadcast, kDandelion, kDandelionPP, kOnion };
enum class BroadcastMode { kAll, kSqrt };

std::string_view to_string(ProtocolKind kind);
std::string_view to_string(BroadcastMode mode);
std::optional<ProtocolKind> parse_protocol_kind(std::string_view s);
std::optional<BroadcastMode> parse_broadcast_mode(std::string_view s);

inline bool is_dandelion(ProtocolKind kind) {
  return kind == ProtocolKind::kDandelion || kind == ProtocolKind::kDandelionPP;
}

struct ProtocolConfig {
  ProtocolKind kind = ProtocolKind::kBroadcast;
  BroadcastMode broadcast_mode = BroadcastMode::kAll;
  // Per-hop probability of leaving the stem (Dandelion variants only).
  double broadcast_probability = 0.5;
  std::uint32_t stem_cap = 40;
  // Number of onion relays.
  std::uint32_t onion_path_len = 3;

  // Throws ConfigError.
  void validate(std::size_t num_nodes) const;
};

// Stem successors per node: one for Dandelion, two distinct ones for
// Dandelion++ (one when the node has a single neighbor).
class AnonymityGraph {
 public:
  AnonymityGraph(std::vector<std::array<NodeId, 2>> successors,
                 std::vector<std::uint8_t> counts, Seed epoch_seed);

  std::size_t num_nodes() const noexcept { return counts_.size(); }
  std::span<const NodeId> successors(NodeId v) const {
    return {successors_[v].data(), counts_[v]};
  }
  // Nodes u with v among successors(u), ascending.
  std::span<const NodeId> predecessors(NodeId v) const {
    return {pred_.data() + pred_offsets_[v], pred_.data() + pred_offsets_[v + 1]};
  }
  Seed epoch_seed() const noexcept { return epoch_seed_; }

  // The relay `node` uses for message `id`: fixed per (message, node) within
  // the epoch.
  NodeId relay_for(NodeId node, MessageId id) const;

 private:
  std::vector<std::array<NodeId, 2>> successors_;
  std::vector<std::uint8_t> counts_;
  std::vector<std::size_t> pred_offsets_;
  std::vector<NodeId> pred_;
  Seed epoch_seed_;
};

// Throws ParameterError for non-Dandelion kinds.
AnonymityGraph build_anonymity_graph(const NetworkGraph& g, ProtocolKind kind,
                                     Seed seed);

class Protocol {
 public:
  explicit Protocol(const NetworkGraph& g) : graph_(g) {}
  virtual ~Protocol() = default;

  virtual ProtocolKind kind() const noexcept = 0;
  virtual Phase initial_phase() const noexcept = 0;
  // Emits the originator's first transmissions.
  virtual void on_spawn(SimMessage& msg, TimeMs now) const = 0;
  // Handles one delivery the adversary did not censor.
  virtual void on_receive(SimMessage& msg, const SimEvent& ev) const = 0;

  virtual const AnonymityGraph* anonymity_graph() const noexcept { return nullptr; }

  const NetworkGraph& graph() const noexcept { return graph_; }

 protected:
  const NetworkGraph& graph_;
};

// Broadcast-phase forwarding from `node` at `now`. kAll: every neighbor but
// `sender`. kSqrt: ceil(sqrt(deg)) neighbors without replacement, excluding
// `sender` when the degree leaves room. No-op if `node` already broadcast.
void emit_broadcast(const NetworkGraph& g, BroadcastMode mode, SimMessage& msg,
                    NodeId node, std::optional<NodeId> sender, TimeMs now,
                    std::uint32_t stem_hops = 0);

class BroadcastProtocol final : public Protocol {
 public:
  BroadcastProtocol(const NetworkGraph& g, BroadcastMode mode)
      : Protocol(g), mode_(mode) {}

  ProtocolKind kind() const noexcept override { return ProtocolKind::kBroadcast; }
  Phase initial_phase() const noexcept override { return Phase::kBroadcast; }
  void on_spawn(SimMessage& msg, TimeMs now) const override;
  void on_receive(SimMessage& msg, const SimEvent& ev) const override;

 private:
  BroadcastMode mode_;
};

// Dandelion and Dandelion++. Every stem holder, the originator included,
// flips the coin: with probability p (or once the hop count reaches the cap)
// it broadcasts, otherwise it relays along the anonymity graph.
class DandelionProtocol final : public Protocol {
 public:
  DandelionProtocol(const NetworkGraph& g, const ProtocolConfig& cfg,
                    AnonymityGraph anon);

  ProtocolKind kind() const noexcept override { return cfg_.kind; }
  Phase initial_phase() const noexcept override { return Phase::kStem; }
  void on_spawn(SimMessage& msg, TimeMs now) const override;
  void on_receive(SimMessage& msg, const SimEvent& ev) const override;
  const AnonymityGraph* anonymity_graph() const noexcept override { return &anon_; }

  const ProtocolConfig& config() const noexcept { return cfg_; }

 private:
  void stem_step(SimMessage& msg, NodeId node, std::optional<NodeId> sender,
                 std::uint32_t hop, TimeMs now) const;

  ProtocolConfig cfg_;
  AnonymityGraph anon_;
};

// Abstract onion routing: the originator picks L distinct relays; each
// overlay hop takes the shortest-path latency between consecutive relays and
// the last relay broadcasts in plain text.
class OnionProtocol final : public Protocol {
 public:
  OnionProtocol(const NetworkGraph& g, const ProtocolConfig& cfg);

  ProtocolKind kind() const noexcept override { return ProtocolKind::kOnion; }
  Phase initial_phase() const noexcept override { return Phase::kCircuit; }
  void on_spawn(SimMessage& msg, TimeMs now) const override;
  void on_receive(SimMessage& msg, const SimEvent& ev) const override;

 private:
  ProtocolConfig cfg_;
};

std::unique_ptr<Protocol> make_protocol(const NetworkGraph& g,
                                        const ProtocolConfig& cfg, Seed seed);

}  // namespace gossipsim
