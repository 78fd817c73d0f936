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
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gossipsim/message.hpp"
#include "gossipsim/network.hpp"

namespace gossipsim {

enum class Placement { kRandom, kDegree, kBetweenness };

std::string_view to_string(Placement placement);
std::optional<Placement> parse_placement(std::string_view s);

struct AdversaryConfig {
  // Exactly one of `ratio` and `nodes` is used; a non-empty `nodes` list
  // together with a ratio is rejected.
  std::optional<double> ratio;
  std::vector<NodeId> nodes;
  Placement placement = Placement::kRandom;
  bool active = false;
  // Lets estimators use protocol knowledge (the Dandelion anonymity graph).
  bool protocol_aware = true;

  // Throws ConfigError. With `estimation_requested`, at least one node must
  // end up adversarial.
  void validate(std::size_t num_nodes, bool estimation_requested) const;
};

// Number of nodes a ratio corrupts: floor(ratio * N).
std::size_t adversary_count(double ratio, std::size_t num_nodes);

// random: floor(f N) nodes without replacement; degree / betweenness: the
// most central nodes. An explicit list is checked and returned sorted.
std::vector<NodeId> place_adversaries(const NetworkGraph& g,
                                      const AdversaryConfig& cfg, Seed seed);

struct Observation {
  MessageId message_id = 0;
  NodeId observer = 0;
  NodeId sender = 0;
  TimeMs arrival = 0.0;
  Phase phase_at_send = Phase::kBroadcast;
  // False for circuit-phase (encrypted) deliveries.
  bool linkable = true;
};

// Corrupted node set plus the per-message observation log.
class Adversary {
 public:
  Adversary(std::size_t num_nodes, std::vector<NodeId> nodes, bool active);

  bool is_adversarial(NodeId v) const { return mask_[v] != 0; }
  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  // One byte per node, 1 = adversarial.
  std::span<const std::uint8_t> mask() const noexcept { return mask_; }
  bool active() const noexcept { return active_; }
  std::size_t num_honest() const noexcept { return mask_.size() - nodes_.size(); }
  std::vector<NodeId> honest_nodes() const;

  // Logs a delivery to an adversarial node. Returns true when the engine must
  // suppress forwarding (active adversary). Duplicates are logged as well.
  bool observe(const SimEvent& ev);

  // Observations of one message in delivery order.
  std::span<const Observation> observations(MessageId id) const;
  std::size_t num_observations() const noexcept;
  void clear_log() { log_.clear(); }

 private:
  std::vector<NodeId> nodes_;
  std::vector<std::uint8_t> mask_;
  bool active_;
  std::map<MessageId, std::vector<Observation>> log_;
};

}  // namespace gossipsim
