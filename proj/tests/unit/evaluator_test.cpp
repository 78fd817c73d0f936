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

#include <gtest/gtest.h>

#include <cmath>

#include "gossipsim/errors.hpp"
#include "gossipsim/evaluator.hpp"

namespace gossipsim {
namespace {

TEST(RankTest, Examples) {
  const auto d = CandidateDistribution::from_weights(0, {{0, 0.6}, {1, 0.4}});
  EXPECT_EQ(rank_of(d, 0, 10), 1.0);
  EXPECT_EQ(rank_of(d, 1, 10), 2.0);
  EXPECT_EQ(rank_of(CandidateDistribution::point_mass(0, 3), 4, 10), 6.0);
  const std::vector<NodeId> four = {0, 1, 2, 3};
  EXPECT_EQ(rank_of(CandidateDistribution::uniform(0, four), 2, 10), 2.5);
  // Zero tail after a two-node support among 10 honest nodes: 2 + 9/2.
  EXPECT_EQ(rank_of(d, 7, 10), 6.5);
}

MessageResult at_rank_one(NodeId v) { return {v, CandidateDistribution::point_mass(0, v), 1.0}; }

TEST(ReportTest, AllHits) {
  const std::vector<MessageResult> m = {at_rank_one(1), at_rank_one(2)};
  const auto r = compute_report("first_sent", m, 10);
  EXPECT_EQ(r.hit_ratio, 1.0);
  EXPECT_EQ(r.inverse_rank, 1.0);
  EXPECT_EQ(r.ndcg, 1.0);
  EXPECT_EQ(r.entropy, 0.0);
  EXPECT_EQ(r.message_spread_ratio, 1.0);
  EXPECT_EQ(r.num_msg, 2u);
  EXPECT_EQ(r.estimator, "first_sent");
}

TEST(ReportTest, RanksOneTwoFour) {
  // Candidates 10 > 11 > 12 > 13 by weight.
  const auto d = CandidateDistribution::from_weights(0, {{10, 4}, {11, 3}, {12, 2}, {13, 1}});
  const std::vector<MessageResult> m = {{10, d, 1.0}, {11, d, 0.5}, {13, d, 0.0}};
  const auto r = compute_report("x", m, 20);
  EXPECT_NEAR(r.inverse_rank, 0.5833, 1e-4);
  EXPECT_NEAR(r.inverse_rank, (1 + 0.5 + 0.25) / 3, 1e-12);
  EXPECT_NEAR(r.ndcg, (1 + 1 / std::log2(3.0) + 1 / std::log2(5.0)) / 3, 1e-12);
  EXPECT_NEAR(r.ndcg, 0.6872, 1e-4);
  EXPECT_NEAR(r.hit_ratio, 1.0 / 3, 1e-12);
  EXPECT_NEAR(r.message_spread_ratio, 0.5, 1e-12);
}

TEST(ReportTest, UniformEntropyAndUnobserved) {
  const std::vector<NodeId> four = {0, 1, 2, 3};
  const std::vector<MessageResult> m = {{0, CandidateDistribution::uniform(0, four), 1.0}};
  EXPECT_DOUBLE_EQ(compute_report("x", m, 8).entropy, 2.0);
  const std::vector<MessageResult> none = {{0, std::nullopt, 1.0}};
  const auto r = compute_report("x", none, 9);
  EXPECT_EQ(r.num_unobserved, 1u);
  EXPECT_DOUBLE_EQ(r.entropy, std::log2(9.0));
  EXPECT_DOUBLE_EQ(r.inverse_rank, 1.0 / 5.0);
  EXPECT_EQ(r.hit_ratio, 0.0);
}

TEST(ReportTest, EmptyInput) {
  EXPECT_THROW(compute_report("x", {}, 5), ParameterError);
}

TEST(ReportTest, BoundsHold) {
  std::mt19937_64 eng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t honest = 5 + eng() % 20;
    std::vector<MessageResult> m;
    for (int i = 0; i < 10; ++i) {
      std::vector<std::pair<NodeId, double>> w;
      for (NodeId v = 0; v < honest; ++v)
        if (eng() % 3 == 0) w.emplace_back(v, 1.0 + static_cast<double>(eng() % 4));
      std::optional<CandidateDistribution> d;
      if (!w.empty()) d = CandidateDistribution::from_weights(i, w);
      m.push_back({static_cast<NodeId>(eng() % honest), d, 0.5});
    }
    const auto r = compute_report("x", m, honest);
    EXPECT_GE(r.hit_ratio, 0.0);
    EXPECT_LE(r.hit_ratio, 1.0);
    EXPECT_GT(r.inverse_rank, 0.0);
    EXPECT_LE(r.inverse_rank, 1.0);
    EXPECT_GT(r.ndcg, 0.0);
    EXPECT_LE(r.ndcg, 1.0);
    EXPECT_GE(r.entropy, 0.0);
    EXPECT_LE(r.entropy, std::log2(static_cast<double>(honest)) + 1e-12);
    EXPECT_LE(r.hit_ratio, r.ndcg);
  }
}

}  // namespace
}  // namespace gossipsim
