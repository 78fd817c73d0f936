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

#include "gossipsim/sim_engine.hpp"

#include <algorithm>
#include <cassert>

#include "gossipsim/errors.hpp"

namespace gossipsim {

Engine::Engine(const Protocol& protocol, Adversary* adversary, Seed master_seed)
    : protocol_(protocol), adversary_(adversary), master_seed_(master_seed) {
  if (adversary_ && adversary_->mask().size() != protocol_.graph().num_nodes())
    throw ParameterError("adversary and protocol are bound to different graphs");
}

SimMessage Engine::spawn_message(MessageId id, NodeId originator, TimeMs t0) const {
  const NetworkGraph& g = graph();
  if (!g.contains(originator))
    throw ParameterError("originator " + std::to_string(originator) + " is not a node");
  if (g.degree(originator) == 0)
    throw ParameterError("originator " + std::to_string(originator) + " has no neighbors");
  SimMessage msg(id, originator, g.num_nodes(), protocol_.initial_phase(),
                 message_stream_seed(master_seed_, id));
  msg.record_receipt(originator, t0);
  msg.last_delivery_ = t0;
  protocol_.on_spawn(msg, t0);
  return msg;
}

void Engine::run_message(SimMessage& msg) const {
  EventQueue& queue = msg.queue();
  while (!queue.empty()) {
    const SimEvent ev = queue.pop();
    assert(ev.deliver_at >= msg.last_delivery_);
    msg.last_delivery_ = ev.deliver_at;
    ++msg.events_delivered_;
    msg.record_receipt(ev.to_node, ev.deliver_at);
    if (adversary_ && adversary_->is_adversarial(ev.to_node) && adversary_->observe(ev))
      continue;  // censored
    protocol_.on_receive(msg, ev);
  }
  msg.spread_ratio_ =
      static_cast<double>(msg.num_reached()) / static_cast<double>(msg.num_nodes());
}

OriginatorSampler::OriginatorSampler(const NetworkGraph& g, bool use_node_weights)
    : num_nodes_(g.num_nodes()) {
  if (!use_node_weights) return;
  cumulative_.reserve(num_nodes_);
  double acc = 0.0;
  for (double w : g.node_weights()) {
    acc += w;
    cumulative_.push_back(acc);
  }
  if (!(acc > 0.0))
    throw ConfigError("node weights are all zero", "use_node_weights");
}

NodeId OriginatorSampler::sample(Rng& rng) const {
  if (cumulative_.empty()) return static_cast<NodeId>(rng.index(num_nodes_));
  const double target = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  // Zero-weight nodes share their predecessor's cumulative value, so
  // upper_bound never lands on them.
  if (it == cumulative_.end()) --it;
  return static_cast<NodeId>(it - cumulative_.begin());
}

NodeId sample_originator(const NetworkGraph& g, bool use_node_weights, Rng& rng) {
  return OriginatorSampler(g, use_node_weights).sample(rng);
}

}  // namespace gossipsim
