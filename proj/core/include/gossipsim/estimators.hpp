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

// Originator estimators: turn one message's adversary observations into a
// ranked candidate distribution.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gossipsim/adversary.hpp"
#include "gossipsim/message.hpp"
#include "gossipsim/network.hpp"
#include "gossipsim/protocols.hpp"

namespace gossipsim {

struct Candidate {
  NodeId node;
  double probability;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Normalized probability mass over suspected originators. Only nodes with
// positive mass are stored, ordered by descending probability then ascending
// node id; every other node is an implicit zero-mass candidate.
class CandidateDistribution {
 public:
  static CandidateDistribution point_mass(MessageId id, NodeId node);
  static CandidateDistribution uniform(MessageId id, std::span<const NodeId> nodes);
  // Drops non-positive weights and normalizes. Throws ParameterError when
  // nothing positive remains or a node repeats.
  static CandidateDistribution from_weights(
      MessageId id, std::vector<std::pair<NodeId, double>> weights);

  MessageId message_id() const noexcept { return message_id_; }
  std::span<const Candidate> ranked() const noexcept { return ranked_; }
  std::size_t support_size() const noexcept { return ranked_.size(); }
  NodeId top() const { return ranked_.front().node; }
  double probability(NodeId node) const;
  // Shannon entropy in bits.
  double entropy_bits() const;

 private:
  MessageId message_id_ = 0;
  std::vector<Candidate> ranked_;
};

enum class EstimatorKind { kFirstReach, kFirstSent };

std::string_view to_string(EstimatorKind kind);
std::optional<EstimatorKind> parse_estimator(std::string_view s);

// Both estimators skip circuit-phase observations and observations whose
// sender is itself adversarial (`adversarial` is a per-node mask, may be
// empty). An empty result means no usable observation.

// Point mass on the sender of the earliest arrival (ties: lowest sender id).
std::optional<CandidateDistribution> estimate_first_reach(
    MessageId id, std::span<const Observation> obs,
    std::span<const std::uint8_t> adversarial = {});

// Point mass on the sender with the smallest arrival - latency(sender,
// observer) (ties: lowest sender id).
std::optional<CandidateDistribution> estimate_first_sent(
    MessageId id, std::span<const Observation> obs, const NetworkGraph& g,
    std::span<const std::uint8_t> adversarial = {});

std::optional<CandidateDistribution> estimate(
    EstimatorKind kind, MessageId id, std::span<const Observation> obs,
    const NetworkGraph& g, std::span<const std::uint8_t> adversarial = {});

// Spreads the base top candidate v backward over the anonymity graph: every
// stem path u -> ... -> v of k <= stem_cap hops adds (1 - p)^k to u, and v
// itself gets weight 1 for k = 0. Adversarial nodes neither receive mass nor
// relay the walk. The result is normalized.
CandidateDistribution refine_dandelion(const CandidateDistribution& base,
                                       const AnonymityGraph& anon,
                                       double broadcast_probability,
                                       std::uint32_t stem_cap,
                                       std::span<const std::uint8_t> adversarial = {});

}  // namespace gossipsim
