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

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

#include "gossipsim/network.hpp"
#include "gossipsim/rng.hpp"

namespace gossipsim {

using MessageId = std::uint64_t;
using TimeMs = double;

// Stem and circuit are the anonymity phases; a message only ever moves from
// one of them to broadcast.
enum class Phase : std::uint8_t { kStem, kCircuit, kBroadcast };

std::string_view to_string(Phase phase);

struct SimEvent {
  TimeMs deliver_at = 0.0;
  NodeId from_node = 0;
  NodeId to_node = 0;
  MessageId message_id = 0;
  Phase phase_at_send = Phase::kBroadcast;
  // Stem: hop count of the receiving node. Circuit: relay index of the
  // receiving node. Unused for broadcast.
  std::uint32_t hop = 0;
  // Insertion order within the message; breaks deliver_at ties.
  std::uint64_t seq = 0;
};

// Min-queue on (deliver_at, seq).
class EventQueue {
 public:
  void push(const SimEvent& ev) { heap_.push(ev); }
  SimEvent pop() {
    SimEvent ev = heap_.top();
    heap_.pop();
    return ev;
  }
  const SimEvent& top() const { return heap_.top(); }
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const noexcept {
      if (a.deliver_at != b.deliver_at) return a.deliver_at > b.deliver_at;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
};

// One propagating message and all per-run state the protocols keep for it.
class SimMessage {
 public:
  SimMessage(MessageId id, NodeId originator, std::size_t num_nodes, Phase phase,
             Seed stream_seed);

  MessageId id() const noexcept { return id_; }
  NodeId originator() const noexcept { return originator_; }
  Phase phase() const noexcept { return phase_; }
  std::size_t num_nodes() const noexcept { return first_receipt_.size(); }

  // Enqueues a transmission from `from` at time `now` arriving after `delay`.
  void send(NodeId from, NodeId to, Phase phase, std::uint32_t hop, TimeMs now,
            TimeMs delay);

  // Records an arrival; returns true when it is the node's first receipt.
  bool record_receipt(NodeId node, TimeMs at);
  std::optional<TimeMs> first_receipt(NodeId node) const;
  // Receipt map in ascending node order.
  std::map<NodeId, TimeMs> first_receipts() const;
  std::size_t num_reached() const noexcept { return num_reached_; }

  EventQueue& queue() noexcept { return queue_; }
  const EventQueue& queue() const noexcept { return queue_; }

  // Broadcast-phase bookkeeping. mark_broadcast returns false if `node` had
  // already broadcast this message.
  bool mark_broadcast(NodeId node, TimeMs at, std::uint32_t stem_hops);
  bool has_broadcast(NodeId node) const { return broadcast_[node] != 0; }
  bool entered_broadcast() const noexcept { return phase_ == Phase::kBroadcast; }
  std::optional<NodeId> first_broadcaster() const noexcept { return first_broadcaster_; }
  // Stem hops taken before the first broadcast (0 when the originator
  // broadcast directly); empty if the message never left its anonymity phase.
  std::optional<std::uint32_t> stem_length() const noexcept { return stem_length_; }

  std::vector<NodeId>& circuit() noexcept { return circuit_; }
  const std::vector<NodeId>& circuit() const noexcept { return circuit_; }

  // Independent streams so that consuming one (e.g. a Dandelion coin) never
  // shifts another (e.g. sqrt fan-out sampling).
  Rng& coin_rng() noexcept { return coin_rng_; }
  Rng& fanout_rng() noexcept { return fanout_rng_; }
  Rng& route_rng() noexcept { return route_rng_; }

  // Scratch buffer for protocol fan-out sampling.
  std::vector<NodeId>& scratch() noexcept { return scratch_; }

  double spread_ratio() const noexcept { return spread_ratio_; }
  std::uint64_t events_delivered() const noexcept { return events_delivered_; }
  TimeMs last_delivery() const noexcept { return last_delivery_; }

 private:
  friend class Engine;

  MessageId id_;
  NodeId originator_;
  Phase phase_;
  std::vector<TimeMs> first_receipt_;
  std::size_t num_reached_ = 0;
  std::vector<std::uint8_t> broadcast_;
  std::optional<NodeId> first_broadcaster_;
  std::optional<std::uint32_t> stem_length_;
  std::vector<NodeId> circuit_;
  EventQueue queue_;
  std::uint64_t next_seq_ = 0;
  Rng coin_rng_;
  Rng fanout_rng_;
  Rng route_rng_;
  std::vector<NodeId> scratch_;
  double spread_ratio_ = 0.0;
  std::uint64_t events_delivered_ = 0;
  TimeMs last_delivery_ = 0.0;
};

}  // namespace gossipsim
