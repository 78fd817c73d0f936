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

#include "gossipsim/evaluator.hpp"

#include <cmath>

#include "gossipsim/errors.hpp"

namespace gossipsim {

double rank_of(const CandidateDistribution& dist, NodeId originator,
               std::size_t num_honest) {
  const auto ranked = dist.ranked();
  const double p = dist.probability(originator);
  if (p > 0.0) {
    std::size_t above = 0, tied = 0;
    for (const Candidate& c : ranked) {
      if (c.probability > p) {
        ++above;
      } else if (c.probability == p) {
        ++tied;
      }
    }
    return static_cast<double>(above) + static_cast<double>(tied + 1) / 2.0;
  }
  const double support = static_cast<double>(ranked.size());
  const double tail = static_cast<double>(num_honest) - support;
  return support + (tail + 1.0) / 2.0;
}

EvaluationReport compute_report(std::string estimator,
                                std::span<const MessageResult> messages,
                                std::size_t num_honest) {
  if (messages.empty()) throw ParameterError("no messages to evaluate");
  if (num_honest == 0) throw ParameterError("no honest nodes");
  EvaluationReport r;
  r.estimator = std::move(estimator);
  r.num_msg = messages.size();
  const double uniform_rank = (static_cast<double>(num_honest) + 1.0) / 2.0;
  const double uniform_entropy = std::log2(static_cast<double>(num_honest));
  for (const MessageResult& m : messages) {
    double rank, entropy;
    if (m.estimate) {
      rank = rank_of(*m.estimate, m.originator, num_honest);
      entropy = m.estimate->entropy_bits();
    } else {
      rank = uniform_rank;
      entropy = uniform_entropy;
      ++r.num_unobserved;
    }
    if (rank == 1.0) r.hit_ratio += 1.0;
    r.inverse_rank += 1.0 / rank;
    r.ndcg += 1.0 / std::log2(1.0 + rank);
    r.entropy += entropy;
    r.message_spread_ratio += m.spread_ratio;
  }
  const double n = static_cast<double>(messages.size());
  r.hit_ratio /= n;
  r.inverse_rank /= n;
  r.ndcg /= n;
  r.entropy /= n;
  r.message_spread_ratio /= n;
  return r;
}

}  // namespace gossipsim
