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

// P2P graph model: topology generators, edge-list import/export, latency and
// stake sampling, centrality queries and weighted shortest paths.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gossipsim/rng.hpp"

namespace gossipsim {

using NodeId = std::uint32_t;

// Lowest admissible channel latency; sampled latencies are clamped to it.
inline constexpr double kLatencyFloorMs = 1.0;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected, connected graph with symmetric per-edge latency (ms) and
// per-node weight (stake units). Immutable once built; weight changes produce
// a new graph.
class NetworkGraph {
 public:
  // Nodes are [0, num_nodes). Edges are normalized to u < v; self-loops and
  // duplicates are rejected, as is a disconnected edge set. Latencies default
  // to 1 ms and node weights to 1. `labels` (optional) are the external node
  // tokens used by file import/export; they default to the decimal id.
  static NetworkGraph from_edges(std::size_t num_nodes, std::vector<Edge> edges,
                                 std::vector<std::string> labels = {});

  std::size_t num_nodes() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  bool contains(NodeId v) const noexcept { return v < num_nodes(); }

  // Sorted ascending.
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  // Parallel to neighbors(v).
  std::span<const double> neighbor_latencies(NodeId v) const {
    return {adjacency_latency_.data() + offsets_[v],
            adjacency_latency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;

  bool has_edge(NodeId u, NodeId v) const;
  std::optional<std::size_t> edge_index(NodeId u, NodeId v) const;
  // Throws ParameterError when (u, v) is not an edge.
  double latency(NodeId u, NodeId v) const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const double> edge_latencies() const noexcept { return edge_latency_; }
  std::span<const double> node_weights() const noexcept { return node_weight_; }
  double total_node_weight() const noexcept;

  const std::string& label(NodeId v) const { return labels_[v]; }
  std::optional<NodeId> find_label(std::string_view label) const;

  // Copy with replaced weights. Latencies must be >= kLatencyFloorMs, node
  // weights non-negative with a positive sum.
  NetworkGraph with_weights(std::vector<double> edge_latency,
                            std::vector<double> node_weight) const;

 private:
  NetworkGraph() = default;
  void rebuild_adjacency_latency();

  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::size_t> adjacency_edge_;
  std::vector<double> adjacency_latency_;
  std::vector<double> edge_latency_;
  std::vector<double> node_weight_;
  std::vector<std::string> labels_;
};

bool is_connected(std::size_t num_nodes, std::span<const Edge> edges);

// ---- generators ----------------------------------------------------------

// Uniform-degree random graph via stub pairing with local repair (the
// Steger-Wormald style procedure). Requires 3 <= k < n and n*k even.
// Disconnected or stuck attempts are retried with a perturbed seed; throws
// GenerationError once the retry budget is spent.
NetworkGraph gen_random_regular(std::size_t n, std::size_t k, Seed seed);

// Barabasi-Albert preferential attachment grown from a star on m+1 nodes.
// Requires 1 <= m < n.
NetworkGraph gen_scale_free(std::size_t n, std::size_t m, Seed seed);

// ---- file import / export --------------------------------------------------

enum class ComponentPolicy { kLargest, kReject };

// Edge list: one `a b [latency_ms]` per line, `#` comments. Tokens are
// arbitrary strings remapped to dense ids in first-appearance order. Self
// loops are dropped and duplicate edges collapsed (first latency wins).
NetworkGraph load_graph(const std::filesystem::path& path,
                        ComponentPolicy policy = ComponentPolicy::kLargest);
NetworkGraph parse_graph(std::string_view text,
                         ComponentPolicy policy = ComponentPolicy::kLargest);

// Writes `label_u label_v latency` lines, latencies at round-trip precision.
void save_graph(const NetworkGraph& g, const std::filesystem::path& path);

// Lines of `node_token weight`; listed nodes get the given stake, others keep
// their current weight.
NetworkGraph load_node_weights(const NetworkGraph& g,
                               const std::filesystem::path& path);

// ---- weights -----------------------------------------------------------

enum class NodeWeightMode { kStake, kUniform };
enum class EdgeWeightMode { kNormal, kUniform, kUnweighted };

struct WeightGeneratorSpec {
  NodeWeightMode node_mode = NodeWeightMode::kStake;
  EdgeWeightMode edge_mode = EdgeWeightMode::kNormal;
  double normal_mean_ms = 171.0;
  double normal_std_ms = 76.0;
  double stake_lognormal_mu = 7.0;
  double stake_lognormal_sigma = 1.5;

  // Throws ParameterError on a non-positive mean or negative spread.
  void validate() const;
};

// kNormal: N(mean, std) clamped below at kLatencyFloorMs. kUniform: uniform
// on [mean - sqrt(3) std, mean + sqrt(3) std] (same first two moments),
// clamped likewise. kUnweighted: every latency 1 ms. Edge draws come from one
// stream in edge order, node draws from another in node order.
NetworkGraph assign_weights(const NetworkGraph& g,
                            const WeightGeneratorSpec& spec, Seed seed);

// ---- centrality ------------------------------------------------------------

enum class CentralityMetric { kDegree, kBetweenness };

// Unnormalized hop-count betweenness (Brandes), each unordered pair once.
std::vector<double> betweenness_centrality(const NetworkGraph& g);

// All nodes, most central first; ties broken by ascending id.
std::vector<NodeId> centrality_ranking(const NetworkGraph& g,
                                       CentralityMetric metric);

// The `count` most central nodes. Throws ParameterError if count > N.
std::vector<NodeId> get_central_nodes(const NetworkGraph& g, std::size_t count,
                                      CentralityMetric metric);

// ---- shortest paths --------------------------------------------------------

// Latency-weighted Dijkstra distances from `source`.
std::vector<double> shortest_path_latencies(const NetworkGraph& g, NodeId source);

// Latency of the shortest u-v path; stops as soon as `target` settles.
double shortest_path_latency(const NetworkGraph& g, NodeId source, NodeId target);

std::string_view to_string(CentralityMetric metric);
std::optional<CentralityMetric> parse_centrality_metric(std::string_view s);

}  // namespace gossipsim
