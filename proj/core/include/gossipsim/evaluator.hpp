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

#include <optional>
#include <span>
#include <string>

#include "gossipsim/estimators.hpp"

namespace gossipsim {

// Position of `originator` in `dist` (1 = top). Tied candidates share the
// mean of their positions; an originator outside the support gets the
// mid-rank of the zero-mass tail among `num_honest` candidates.
double rank_of(const CandidateDistribution& dist, NodeId originator,
               std::size_t num_honest);

struct EvaluationReport {
  std::string estimator;
  double hit_ratio = 0.0;
  double inverse_rank = 0.0;
  double entropy = 0.0;  // bits
  double ndcg = 0.0;
  double message_spread_ratio = 0.0;
  std::size_t num_msg = 0;
  std::size_t num_unobserved = 0;
};

// Per-message input. An empty estimate is an unobserved message and counts as
// the uniform distribution over the honest nodes.
struct MessageResult {
  NodeId originator = 0;
  std::optional<CandidateDistribution> estimate;
  double spread_ratio = 0.0;
};

// hit_ratio: share of messages with rank exactly 1. inverse_rank: mean 1/r.
// entropy: mean Shannon entropy in bits. ndcg: mean 1/log2(1 + r).
// Throws ParameterError on an empty input.
EvaluationReport compute_report(std::string estimator,
                                std::span<const MessageResult> messages,
                                std::size_t num_honest);

}  // namespace gossipsim
