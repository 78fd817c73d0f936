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

#include <algorithm>

#include "gossipsim/errors.hpp"
#include "gossipsim/sim_engine.hpp"
#include "test_support.hpp"

namespace gossipsim {
namespace {

AdversaryConfig ratio_config(double f, Placement placement = Placement::kRandom) {
  AdversaryConfig c;
  c.ratio = f;
  c.placement = placement;
  return c;
}

TEST(PlaceAdversariesTest, RandomFloorCount) {
  const NetworkGraph g = gen_random_regular(100, 4, 1);
  const auto nodes = place_adversaries(g, ratio_config(0.1), 3);
  EXPECT_EQ(nodes.size(), 10u);
  EXPECT_TRUE(std::is_sorted(nodes.begin(), nodes.end()));
  EXPECT_EQ(std::adjacent_find(nodes.begin(), nodes.end()), nodes.end());
  EXPECT_EQ(adversary_count(0.15, 10), 1u);
  EXPECT_EQ(adversary_count(0.3, 10), 3u);
}

TEST(PlaceAdversariesTest, StarDegreePicksHub) {
  const NetworkGraph g = testing::star_graph(9);
  EXPECT_EQ(place_adversaries(g, ratio_config(0.1, Placement::kDegree), 0),
            std::vector<NodeId>{0});
  EXPECT_EQ(place_adversaries(g, ratio_config(0.1, Placement::kBetweenness), 0),
            std::vector<NodeId>{0});
}

TEST(PlaceAdversariesTest, RandomSetsAreNestedAcrossRatios) {
  const NetworkGraph g = gen_random_regular(200, 4, 1);
  const auto small = place_adversaries(g, ratio_config(0.05), 9);
  const auto large = place_adversaries(g, ratio_config(0.2), 9);
  EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
}

TEST(PlaceAdversariesTest, ExplicitList) {
  const NetworkGraph g = testing::triangle();
  AdversaryConfig c;
  c.nodes = {2, 0, 2};
  EXPECT_EQ(place_adversaries(g, c, 0), (std::vector<NodeId>{0, 2}));
  c.nodes = {7};
  EXPECT_THROW(place_adversaries(g, c, 0), ParameterError);
}

TEST(AdversaryConfigTest, Validation) {
  EXPECT_THROW(ratio_config(0.0).validate(100, true), ConfigError);
  EXPECT_NO_THROW(ratio_config(0.0).validate(100, false));
  EXPECT_THROW(ratio_config(0.001).validate(100, true), ConfigError);
  EXPECT_THROW(ratio_config(1.0).validate(100, true), ConfigError);
  EXPECT_THROW(ratio_config(-0.1).validate(100, true), ConfigError);
  AdversaryConfig both = ratio_config(0.1);
  both.nodes = {1};
  EXPECT_THROW(both.validate(100, true), ConfigError);
  AdversaryConfig none;
  EXPECT_THROW(none.validate(100, true), ConfigError);
  try {
    ratio_config(0.0).validate(100, true);
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "adversary.ratio");
  }
}

SimEvent event(Phase phase, NodeId from, NodeId to, TimeMs at) {
  SimEvent ev;
  ev.phase_at_send = phase;
  ev.from_node = from;
  ev.to_node = to;
  ev.deliver_at = at;
  ev.message_id = 4;
  return ev;
}

TEST(ObserveTest, PassiveStemDelivery) {
  Adversary adv(5, {2}, false);
  EXPECT_FALSE(adv.observe(event(Phase::kStem, 1, 2, 30.0)));
  ASSERT_EQ(adv.observations(4).size(), 1u);
  const Observation& o = adv.observations(4)[0];
  EXPECT_EQ(o.sender, 1u);
  EXPECT_EQ(o.observer, 2u);
  EXPECT_EQ(o.arrival, 30.0);
  EXPECT_TRUE(o.linkable);
  EXPECT_EQ(o.phase_at_send, Phase::kStem);
}

TEST(ObserveTest, ActiveStemDeliveryCensors) {
  Adversary adv(5, {2}, true);
  EXPECT_TRUE(adv.observe(event(Phase::kStem, 1, 2, 30.0)));
  EXPECT_EQ(adv.observations(4).size(), 1u);
}

TEST(ObserveTest, CircuitDeliveryIsUnlinkable) {
  Adversary adv(5, {2}, false);
  adv.observe(event(Phase::kCircuit, 1, 2, 30.0));
  EXPECT_FALSE(adv.observations(4)[0].linkable);
  EXPECT_TRUE(adv.observations(99).empty());
  adv.clear_log();
  EXPECT_EQ(adv.num_observations(), 0u);
}

TEST(ObserveTest, ActiveStemAdversaryKillsMessage) {
  // Dandelion line whose successor chain runs through the adversary.
  const NetworkGraph g = testing::path_graph(4);
  AnonymityGraph anon({{1, 0}, {2, 0}, {3, 0}, {2, 0}}, {1, 1, 1, 1}, 0);
  ProtocolConfig cfg;
  cfg.kind = ProtocolKind::kDandelion;
  cfg.broadcast_probability = 1e-12;
  DandelionProtocol protocol(g, cfg, anon);
  Adversary adv(4, {2}, true);
  Engine engine(protocol, &adv, 0);
  SimMessage msg = engine.spawn_message(0, 0);
  engine.run_message(msg);
  EXPECT_FALSE(msg.entered_broadcast());
  EXPECT_FALSE(msg.stem_length());
  EXPECT_DOUBLE_EQ(msg.spread_ratio(), 0.75);
}

TEST(CensorshipTest, SpreadShrinksWithNestedActiveSets) {
  const NetworkGraph g = assign_weights(gen_random_regular(300, 8, 4), {}, 4);
  ProtocolConfig cfg;
  cfg.kind = ProtocolKind::kDandelion;
  cfg.broadcast_probability = 0.25;
  auto protocol = make_protocol(g, cfg, 5);
  double previous = 2.0;
  for (double f : {0.0, 0.05, 0.1, 0.2}) {
    const auto nodes = f > 0 ? place_adversaries(g, ratio_config(f), 6) : std::vector<NodeId>{};
    Adversary adv(300, nodes, true);
    Engine engine(*protocol, &adv, 7);
    double spread = 0.0;
    int sent = 0;
    for (MessageId id = 0; sent < 100; ++id) {
      const NodeId origin = static_cast<NodeId>(id % 300);
      if (adv.is_adversarial(origin)) continue;
      SimMessage msg = engine.spawn_message(id, origin);
      engine.run_message(msg);
      spread += msg.spread_ratio();
      ++sent;
    }
    spread /= 100.0;
    EXPECT_LE(spread, previous) << "f=" << f;
    previous = spread;
  }
  EXPECT_LT(previous, 0.9);
}

}  // namespace
}  // namespace gossipsim
