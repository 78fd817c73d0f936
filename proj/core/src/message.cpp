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

#include "gossipsim/message.hpp"

namespace gossipsim {

namespace {
constexpr TimeMs kNever = std::numeric_limits<TimeMs>::infinity();
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kStem:
      return "stem";
    case Phase::kCircuit:
      return "circuit";
    case Phase::kBroadcast:
      return "broadcast";
  }
  return "?";
}

SimMessage::SimMessage(MessageId id, NodeId originator, std::size_t num_nodes,
                       Phase phase, Seed stream_seed)
    : id_(id),
      originator_(originator),
      phase_(phase),
      first_receipt_(num_nodes, kNever),
      broadcast_(num_nodes, 0),
      coin_rng_(derive_seed(stream_seed, 1)),
      fanout_rng_(derive_seed(stream_seed, 2)),
      route_rng_(derive_seed(stream_seed, 3)) {}

void SimMessage::send(NodeId from, NodeId to, Phase phase, std::uint32_t hop,
                      TimeMs now, TimeMs delay) {
  SimEvent ev;
  ev.deliver_at = now + delay;
  ev.from_node = from;
  ev.to_node = to;
  ev.message_id = id_;
  ev.phase_at_send = phase;
  ev.hop = hop;
  ev.seq = next_seq_++;
  queue_.push(ev);
}

bool SimMessage::record_receipt(NodeId node, TimeMs at) {
  if (first_receipt_[node] != kNever) return false;
  first_receipt_[node] = at;
  ++num_reached_;
  return true;
}

std::optional<TimeMs> SimMessage::first_receipt(NodeId node) const {
  if (node >= first_receipt_.size() || first_receipt_[node] == kNever)
    return std::nullopt;
  return first_receipt_[node];
}

std::map<NodeId, TimeMs> SimMessage::first_receipts() const {
  std::map<NodeId, TimeMs> out;
  for (NodeId v = 0; v < first_receipt_.size(); ++v)
    if (first_receipt_[v] != kNever) out.emplace(v, first_receipt_[v]);
  return out;
}

bool SimMessage::mark_broadcast(NodeId node, TimeMs /*at*/, std::uint32_t stem_hops) {
  if (broadcast_[node]) return false;
  broadcast_[node] = 1;
  if (phase_ != Phase::kBroadcast) {
    phase_ = Phase::kBroadcast;
    first_broadcaster_ = node;
    stem_length_ = stem_hops;
  }
  return true;
}

}  // namespace gossipsim
