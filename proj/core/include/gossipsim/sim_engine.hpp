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

#include <vector>

#include "gossipsim/adversary.hpp"
#include "gossipsim/message.hpp"
#include "gossipsim/network.hpp"
#include "gossipsim/protocols.hpp"
#include "gossipsim/rng.hpp"

namespace gossipsim {

// Seed of message `id`'s random streams under master seed `master`.
constexpr Seed message_stream_seed(Seed master, MessageId id) noexcept {
  return master ^ id;
}

// Discrete-event propagation of single messages. Events are delivered in
// (deliver_at, insertion order); there is no per-node processing delay.
class Engine {
 public:
  // `adversary` may be null. It must outlive the engine and is mutated by
  // run_message (observation log).
  Engine(const Protocol& protocol, Adversary* adversary, Seed master_seed);

  // New message with the originator's first receipt at t0 and the protocol's
  // initial transmissions queued. Throws ParameterError for an unknown or
  // isolated originator.
  SimMessage spawn_message(MessageId id, NodeId originator, TimeMs t0 = 0.0) const;

  // Drains the queue: records first receipts, lets the adversary observe
  // (and possibly censor) deliveries to its nodes, otherwise hands the
  // delivery to the protocol. Finalizes the spread ratio.
  void run_message(SimMessage& msg) const;

  const Protocol& protocol() const noexcept { return protocol_; }
  const NetworkGraph& graph() const noexcept { return protocol_.graph(); }

 private:
  const Protocol& protocol_;
  Adversary* adversary_;
  Seed master_seed_;
};

// Precomputed cumulative weights for originator sampling.
class OriginatorSampler {
 public:
  // Throws ConfigError when use_node_weights is set and all weights are 0.
  OriginatorSampler(const NetworkGraph& g, bool use_node_weights);
  NodeId sample(Rng& rng) const;

 private:
  std::size_t num_nodes_;
  std::vector<double> cumulative_;  // empty when uniform
};

NodeId sample_originator(const NetworkGraph& g, bool use_node_weights, Rng& rng);

}  // namespace gossipsim
