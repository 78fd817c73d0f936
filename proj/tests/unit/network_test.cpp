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
#include <cmath>
#include <deque>

#include "gossipsim/errors.hpp"
#include "gossipsim/network.hpp"
#include "test_support.hpp"

namespace gossipsim {
namespace {

using testing::TempDir;

TEST(RandomRegularTest, TenNodesDegreeThree) {
  const NetworkGraph g = gen_random_regular(10, 3, 7);
  ASSERT_EQ(g.num_nodes(), 10u);
  EXPECT_EQ(g.num_edges(), 15u);
  for (NodeId v = 0; v < 10; ++v) EXPECT_EQ(g.degree(v), 3u);
}

TEST(RandomRegularTest, RejectsBadParameters) {
  EXPECT_THROW(gen_random_regular(5, 5, 1), ParameterError);
  EXPECT_THROW(gen_random_regular(5, 3, 1), ParameterError);  // n*k odd
  EXPECT_THROW(gen_random_regular(4, 6, 1), ParameterError);
}

TEST(RandomRegularTest, ThousandNodesConnected) {
  const NetworkGraph g = gen_random_regular(1000, 50, 11);
  EXPECT_EQ(testing::bfs_reach(g, 0), 1000u);
}

TEST(RandomRegularTest, RegularAcrossSeeds) {
  for (Seed s = 0; s < 20; ++s) {
    const NetworkGraph g = gen_random_regular(60, 4 + (s % 3) * 2, s);
    const std::size_t k = g.degree(0);
    for (NodeId v = 0; v < g.num_nodes(); ++v) ASSERT_EQ(g.degree(v), k) << "seed " << s;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
      for (NodeId u : g.neighbors(v)) ASSERT_NE(u, v);
  }
}

TEST(RandomRegularTest, Deterministic) {
  const NetworkGraph a = gen_random_regular(200, 6, 99);
  const NetworkGraph b = gen_random_regular(200, 6, 99);
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_NE(a.edges(), gen_random_regular(200, 6, 100).edges());
}

TEST(ScaleFreeTest, TwentyNodes) {
  const NetworkGraph g = gen_scale_free(20, 3, 5);
  EXPECT_EQ(g.num_nodes(), 20u);
  EXPECT_EQ(testing::bfs_reach(g, 0), 20u);
  EXPECT_GT(g.max_degree(), 3u);
}

TEST(ScaleFreeTest, SmallestInstance) {
  const NetworkGraph g = gen_scale_free(2, 1, 5);
  EXPECT_EQ(g.num_nodes(), 2u);
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_TRUE(g.has_edge(0, 1));
}

TEST(ScaleFreeTest, RejectsBadParameters) {
  EXPECT_THROW(gen_scale_free(20, 20, 1), ParameterError);
  EXPECT_THROW(gen_scale_free(20, 0, 1), ParameterError);
}

TEST(ScaleFreeTest, HubDominated) {
  const NetworkGraph g = gen_scale_free(1000, 3, 2);
  std::vector<std::size_t> deg;
  for (NodeId v = 0; v < g.num_nodes(); ++v) deg.push_back(g.degree(v));
  std::nth_element(deg.begin(), deg.begin() + 500, deg.end());
  EXPECT_GT(g.max_degree(), 10 * deg[500]);
}

TEST(ParseGraphTest, Triangle) {
  const NetworkGraph g = parse_graph("0 1\n1 2\n2 0\n");
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 3u);
}

TEST(ParseGraphTest, SelfLoopDropped) {
  const NetworkGraph g = parse_graph("0 0\n0 1\n");
  EXPECT_EQ(g.num_nodes(), 2u);
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(ParseGraphTest, CommentsDuplicatesAndLabels) {
  const NetworkGraph g = parse_graph("# header\nenode_b enode_a\n\nenode_a enode_b\nenode_a c 20.5\n");
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.label(0), "enode_b");
  const auto a = g.find_label("enode_a");
  const auto c = g.find_label("c");
  ASSERT_TRUE(a && c);
  EXPECT_DOUBLE_EQ(g.latency(*a, *c), 20.5);
}

TEST(ParseGraphTest, ErrorsCarryLineNumbers) {
  try {
    parse_graph("0 1\n1 2 3 4\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_graph("0 1\n1 2 0.5\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_graph(""), FormatError);
  EXPECT_THROW(parse_graph("# only a comment\n"), FormatError);
}

TEST(ParseGraphTest, DisconnectedInput) {
  const std::string text = "0 1\n1 2\n2 0\n5 6\n";
  const NetworkGraph g = parse_graph(text);
  EXPECT_EQ(g.num_nodes(), 3u);
  EXPECT_THROW(parse_graph(text, ComponentPolicy::kReject), FormatError);
}

TEST(LoadGraphTest, MissingFile) {
  EXPECT_THROW(load_graph("/nonexistent/graph.txt"), IoError);
}

TEST(LoadGraphTest, ExportImportRoundTrip) {
  TempDir dir;
  const NetworkGraph g0 = gen_scale_free(300, 2, 4);
  WeightGeneratorSpec spec;
  const NetworkGraph g = assign_weights(g0, spec, 17);
  save_graph(g, dir.path() / "g.txt");
  const NetworkGraph h = load_graph(dir.path() / "g.txt");
  ASSERT_EQ(h.num_nodes(), g.num_nodes());
  ASSERT_EQ(h.num_edges(), g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge e = g.edges()[i];
    const auto u = h.find_label(g.label(e.u));
    const auto v = h.find_label(g.label(e.v));
    ASSERT_TRUE(u && v);
    EXPECT_EQ(h.latency(*u, *v), g.edge_latencies()[i]);
  }
  // A second round trip writes the same set of lines.
  save_graph(h, dir.path() / "h.txt");
  save_graph(load_graph(dir.path() / "h.txt"), dir.path() / "h2.txt");
  auto lines = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    std::multiset<std::string> out;
    std::string header;
    std::getline(in, header);
    out.insert(header);
    for (std::string a, b, w; in >> a >> b >> w;) out.insert(std::min(a, b) + ' ' + std::max(a, b) + ' ' + w);
    return out;
  };
  EXPECT_EQ(lines(dir.path() / "h.txt"), lines(dir.path() / "h2.txt"));
}

TEST(LoadNodeWeightsTest, OverridesListedNodes) {
  TempDir dir;
  const NetworkGraph g = parse_graph("a b\nb c\n");
  const auto path = dir.write("w.txt", "# stakes\nb 32\nzz 5\n");
  const NetworkGraph h = load_node_weights(g, path);
  EXPECT_EQ(h.node_weights()[*h.find_label("b")], 32.0);
  EXPECT_EQ(h.node_weights()[*h.find_label("a")], 1.0);
  EXPECT_THROW(load_node_weights(g, dir.write("bad.txt", "a -1\n")), FormatError);
}

TEST(AssignWeightsTest, UnweightedTriangle) {
  WeightGeneratorSpec spec;
  spec.edge_mode = EdgeWeightMode::kUnweighted;
  const NetworkGraph g = assign_weights(testing::triangle(), spec, 3);
  for (double l : g.edge_latencies()) EXPECT_EQ(l, 1.0);
}

TEST(AssignWeightsTest, NormalLatencyMoments) {
  const NetworkGraph base = gen_random_regular(1000, 20, 1);
  ASSERT_EQ(base.num_edges(), 10000u);
  const NetworkGraph g = assign_weights(base, WeightGeneratorSpec{}, 2);
  double sum = 0.0, sq = 0.0;
  for (double l : g.edge_latencies()) sum += l;
  const double mean = sum / 10000.0;
  for (double l : g.edge_latencies()) sq += (l - mean) * (l - mean);
  const double sd = std::sqrt(sq / 9999.0);
  EXPECT_NEAR(mean, 171.0, 5.0);
  EXPECT_NEAR(sd, 76.0, 5.0);
}

TEST(AssignWeightsTest, LatencyFloorHolds) {
  WeightGeneratorSpec spec;
  spec.normal_mean_ms = 2.0;
  spec.normal_std_ms = 50.0;
  for (EdgeWeightMode mode : {EdgeWeightMode::kNormal, EdgeWeightMode::kUniform}) {
    spec.edge_mode = mode;
    const NetworkGraph g = assign_weights(gen_random_regular(200, 10, 3), spec, 4);
    for (double l : g.edge_latencies()) EXPECT_GE(l, kLatencyFloorMs);
    EXPECT_NE(std::count(g.edge_latencies().begin(), g.edge_latencies().end(), kLatencyFloorMs), 0);
  }
}

TEST(AssignWeightsTest, UniformEdgeModeRange) {
  WeightGeneratorSpec spec;
  spec.edge_mode = EdgeWeightMode::kUniform;
  const NetworkGraph g = assign_weights(gen_random_regular(1000, 20, 1), spec, 9);
  const double half = std::sqrt(3.0) * 76.0;
  double sum = 0.0;
  for (double l : g.edge_latencies()) {
    EXPECT_GE(l, 171.0 - half);
    EXPECT_LT(l, 171.0 + half);
    sum += l;
  }
  EXPECT_NEAR(sum / 10000.0, 171.0, 3.0);
}

TEST(AssignWeightsTest, StakeAndUniformNodes) {
  WeightGeneratorSpec spec;
  const NetworkGraph stake = assign_weights(gen_random_regular(500, 4, 1), spec, 5);
  double log_sum = 0.0;
  for (double w : stake.node_weights()) {
    EXPECT_GT(w, 0.0);
    log_sum += std::log(w);
  }
  EXPECT_NEAR(log_sum / 500.0, 7.0, 0.25);
  spec.node_mode = NodeWeightMode::kUniform;
  const NetworkGraph uni = assign_weights(gen_random_regular(50, 4, 1), spec, 5);
  for (double w : uni.node_weights()) EXPECT_EQ(w, 1.0);
}

TEST(AssignWeightsTest, DeterministicAndValidated) {
  const NetworkGraph base = gen_random_regular(100, 4, 1);
  const NetworkGraph a = assign_weights(base, WeightGeneratorSpec{}, 8);
  const NetworkGraph b = assign_weights(base, WeightGeneratorSpec{}, 8);
  EXPECT_TRUE(std::equal(a.edge_latencies().begin(), a.edge_latencies().end(),
                         b.edge_latencies().begin()));
  EXPECT_TRUE(std::equal(a.node_weights().begin(), a.node_weights().end(),
                         b.node_weights().begin()));
  WeightGeneratorSpec bad;
  bad.normal_mean_ms = 0.0;
  EXPECT_THROW(assign_weights(base, bad, 1), ParameterError);
}

TEST(CentralNodesTest, StarHub) {
  EXPECT_EQ(get_central_nodes(testing::star_graph(9), 1, CentralityMetric::kDegree),
            std::vector<NodeId>{0});
}

TEST(CentralNodesTest, PathMiddle) {
  EXPECT_EQ(get_central_nodes(testing::path_graph(3), 1, CentralityMetric::kBetweenness),
            std::vector<NodeId>{1});
}

TEST(CentralNodesTest, TriangleTieBreak) {
  EXPECT_EQ(get_central_nodes(testing::triangle(), 2, CentralityMetric::kDegree),
            (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(get_central_nodes(testing::triangle(), 3, CentralityMetric::kBetweenness),
            (std::vector<NodeId>{0, 1, 2}));
}

TEST(CentralNodesTest, CountAboveN) {
  EXPECT_THROW(get_central_nodes(testing::triangle(), 4, CentralityMetric::kDegree),
               ParameterError);
}

TEST(CentralNodesTest, Deterministic) {
  const NetworkGraph g = gen_scale_free(200, 2, 6);
  EXPECT_EQ(get_central_nodes(g, 20, CentralityMetric::kBetweenness),
            get_central_nodes(g, 20, CentralityMetric::kBetweenness));
}

// Pair-enumeration oracle: for every s < t, the share of shortest (hop)
// paths through v.
std::vector<double> brute_betweenness(const NetworkGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (NodeId s = 0; s < n; ++s) {
    std::deque<NodeId> q{s};
    dist[s][s] = 0;
    sigma[s][s] = 1.0;
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop_front();
      for (NodeId w : g.neighbors(u)) {
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][u] + 1;
          q.push_back(w);
        }
        if (dist[s][w] == dist[s][u] + 1) sigma[s][w] += sigma[s][u];
      }
    }
  }
  std::vector<double> bc(n, 0.0);
  for (NodeId s = 0; s < n; ++s)
    for (NodeId t = s + 1; t < n; ++t)
      for (NodeId v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t])
          bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
  return bc;
}

TEST(BetweennessTest, MatchesPairEnumeration) {
  for (Seed s = 0; s < 5; ++s) {
    const NetworkGraph g = s % 2 ? gen_scale_free(40, 2, s) : testing::random_connected_graph(35, 30, s);
    const auto fast = betweenness_centrality(g);
    const auto slow = brute_betweenness(g);
    for (NodeId v = 0; v < g.num_nodes(); ++v) EXPECT_NEAR(fast[v], slow[v], 1e-9);
  }
}

TEST(ShortestPathTest, MatchesDenseDijkstra) {
  for (Seed s = 0; s < 10; ++s) {
    const NetworkGraph g = testing::random_connected_graph(80, 120, s);
    const auto fast = shortest_path_latencies(g, s % 80);
    const auto slow = testing::dense_dijkstra(g, s % 80);
    for (NodeId v = 0; v < g.num_nodes(); ++v) EXPECT_NEAR(fast[v], slow[v], 1e-9);
    EXPECT_NEAR(shortest_path_latency(g, s % 80, 79), slow[79], 1e-9);
  }
}

TEST(NetworkGraphTest, RejectsInvalidEdgeSets) {
  EXPECT_THROW(NetworkGraph::from_edges(3, {{0, 1}}), ParameterError);
  EXPECT_THROW(NetworkGraph::from_edges(2, {{0, 1}, {1, 0}}), ParameterError);
  EXPECT_THROW(NetworkGraph::from_edges(2, {{0, 2}}), ParameterError);
  EXPECT_THROW(testing::triangle().latency(0, 0), ParameterError);
}

}  // namespace
}  // namespace gossipsim
