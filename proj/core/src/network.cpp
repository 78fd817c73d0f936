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

#include "gossipsim/network.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "gossipsim/errors.hpp"
#include "text_util.hpp"

namespace gossipsim {
namespace {

std::uint64_t edge_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Component id per node; ids assigned in order of the smallest member.
std::vector<std::size_t> components(std::size_t n, std::span<const Edge> edges,
                                    std::size_t* count) {
  std::vector<std::vector<NodeId>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(n, kUnset);
  std::size_t next = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != kUnset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : adj[v]) {
        if (comp[w] == kUnset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

}  // namespace

// ---- NetworkGraph ------------------------------------------------------------

NetworkGraph NetworkGraph::from_edges(std::size_t num_nodes,
                                      std::vector<Edge> edges,
                                      std::vector<std::string> labels) {
  if (num_nodes == 0) throw ParameterError("graph must have at least one node");
  if (num_nodes > std::numeric_limits<NodeId>::max())
    throw ParameterError("too many nodes");
  for (Edge& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes)
      throw ParameterError("edge endpoint out of range");
    if (e.u == e.v) throw ParameterError("self-loop on node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ParameterError("duplicate edge");
  if (!is_connected(num_nodes, edges)) throw ParameterError("graph is not connected");

  if (labels.empty()) {
    labels.reserve(num_nodes);
    for (std::size_t i = 0; i < num_nodes; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != num_nodes) {
    throw ParameterError("label count does not match node count");
  }

  NetworkGraph g;
  g.edges_ = std::move(edges);
  g.labels_ = std::move(labels);
  g.edge_latency_.assign(g.edges_.size(), kLatencyFloorMs);
  g.node_weight_.assign(num_nodes, 1.0);

  std::vector<std::size_t> deg(num_nodes, 0);
  for (const Edge& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(num_nodes + 1, 0);
  for (std::size_t i = 0; i < num_nodes; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adjacency_.resize(g.offsets_.back());
  g.adjacency_edge_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so filling in edge order leaves each
  // neighbor list sorted.
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const Edge& e = g.edges_[i];
    g.adjacency_[cursor[e.u]] = e.v;
    g.adjacency_edge_[cursor[e.u]++] = i;
  }
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const Edge& e = g.edges_[i];
    g.adjacency_[cursor[e.v]] = e.u;
    g.adjacency_edge_[cursor[e.v]++] = i;
  }
  // The second pass appends smaller ids after larger ones; re-sort per node.
  for (std::size_t v = 0; v < num_nodes; ++v) {
    const std::size_t b = g.offsets_[v], e = g.offsets_[v + 1];
    std::vector<std::pair<NodeId, std::size_t>> tmp;
    tmp.reserve(e - b);
    for (std::size_t i = b; i < e; ++i) tmp.emplace_back(g.adjacency_[i], g.adjacency_edge_[i]);
    std::sort(tmp.begin(), tmp.end());
    for (std::size_t i = b; i < e; ++i) {
      g.adjacency_[i] = tmp[i - b].first;
      g.adjacency_edge_[i] = tmp[i - b].second;
    }
  }
  g.rebuild_adjacency_latency();
  return g;
}

void NetworkGraph::rebuild_adjacency_latency() {
  adjacency_latency_.resize(adjacency_edge_.size());
  for (std::size_t i = 0; i < adjacency_edge_.size(); ++i)
    adjacency_latency_[i] = edge_latency_[adjacency_edge_[i]];
}

std::size_t NetworkGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_nodes(); ++v)
    best = std::max(best, degree(static_cast<NodeId>(v)));
  return best;
}

std::optional<std::size_t> NetworkGraph::edge_index(NodeId u, NodeId v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return adjacency_edge_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
}

bool NetworkGraph::has_edge(NodeId u, NodeId v) const {
  return edge_index(u, v).has_value();
}

double NetworkGraph::latency(NodeId u, NodeId v) const {
  auto idx = edge_index(u, v);
  if (!idx)
    throw ParameterError("no edge between " + std::to_string(u) + " and " +
                         std::to_string(v));
  return edge_latency_[*idx];
}

double NetworkGraph::total_node_weight() const noexcept {
  return std::accumulate(node_weight_.begin(), node_weight_.end(), 0.0);
}

std::optional<NodeId> NetworkGraph::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<NodeId>(i);
  return std::nullopt;
}

NetworkGraph NetworkGraph::with_weights(std::vector<double> edge_latency,
                                        std::vector<double> node_weight) const {
  if (edge_latency.size() != edges_.size())
    throw ParameterError("edge latency count does not match edge count");
  if (node_weight.size() != num_nodes())
    throw ParameterError("node weight count does not match node count");
  for (double l : edge_latency)
    if (!std::isfinite(l) || l < kLatencyFloorMs)
      throw ParameterError("edge latency below floor");
  double sum = 0.0;
  for (double w : node_weight) {
    if (!std::isfinite(w) || w < 0.0) throw ParameterError("negative node weight");
    sum += w;
  }
  if (!(sum > 0.0)) throw ParameterError("node weights must have a positive sum");
  NetworkGraph g = *this;
  g.edge_latency_ = std::move(edge_latency);
  g.node_weight_ = std::move(node_weight);
  g.rebuild_adjacency_latency();
  return g;
}

bool is_connected(std::size_t num_nodes, std::span<const Edge> edges) {
  if (num_nodes == 0) return false;
  std::size_t count = 0;
  components(num_nodes, edges, &count);
  return count == 1;
}

// ---- generators ------------------------------------------------------------

namespace {

constexpr int kMaxGenerationAttempts = 200;

// One stub-pairing attempt; empty result when the attempt got stuck.
std::optional<std::vector<Edge>> try_random_regular(std::size_t n, std::size_t k,
                                                    Rng& rng) {
  std::unordered_set<std::uint64_t> present;
  present.reserve(n * k);
  std::vector<Edge> edges;
  edges.reserve(n * k / 2);

  std::vector<NodeId> stubs;
  stubs.reserve(n * k);
  for (std::size_t rep = 0; rep < k; ++rep)
    for (NodeId v = 0; v < n; ++v) stubs.push_back(v);

  std::vector<std::size_t> potential(n, 0);
  while (!stubs.empty()) {
    std::fill(potential.begin(), potential.end(), 0);
    rng.shuffle(stubs);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      NodeId a = stubs[i], b = stubs[i + 1];
      if (a > b) std::swap(a, b);
      if (a != b && present.insert(edge_key(a, b)).second) {
        edges.push_back({a, b});
      } else {
        ++potential[a];
        ++potential[b];
      }
    }
    // Stuck when every pair among the leftover stubs is a loop or a duplicate.
    std::vector<NodeId> left;
    for (NodeId v = 0; v < n; ++v)
      if (potential[v]) left.push_back(v);
    bool suitable = left.empty();
    for (std::size_t i = 0; i < left.size() && !suitable; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!present.contains(edge_key(left[i], left[j]))) {
          suitable = true;
          break;
        }
    if (!suitable) return std::nullopt;
    stubs.clear();
    for (NodeId v : left)
      for (std::size_t c = 0; c < potential[v]; ++c) stubs.push_back(v);
  }
  return edges;
}

}  // namespace

NetworkGraph gen_random_regular(std::size_t n, std::size_t k, Seed seed) {
  if (k < 3 || k >= n)
    throw ParameterError("random regular graph needs 3 <= k < n");
  if ((n * k) % 2 != 0) throw ParameterError("random regular graph needs n*k even");
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    auto edges = try_random_regular(n, k, rng);
    if (!edges || !is_connected(n, *edges)) continue;
    return NetworkGraph::from_edges(n, std::move(*edges));
  }
  throw GenerationError("random regular graph generation exhausted its retries");
}

NetworkGraph gen_scale_free(std::size_t n, std::size_t m, Seed seed) {
  if (m < 1 || m >= n) throw ParameterError("scale-free graph needs 1 <= m < n");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<NodeId> repeated;  // each node once per unit of degree
  for (NodeId leaf = 1; leaf <= m; ++leaf) {
    edges.push_back({0, leaf});
    repeated.push_back(0);
    repeated.push_back(leaf);
  }
  std::vector<NodeId> targets;
  for (NodeId source = static_cast<NodeId>(m + 1); source < n; ++source) {
    targets.clear();
    while (targets.size() < m) {
      NodeId t = repeated[rng.index(repeated.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end())
        targets.push_back(t);
    }
    for (NodeId t : targets) edges.push_back({t, source});
    repeated.insert(repeated.end(), targets.begin(), targets.end());
    repeated.insert(repeated.end(), m, source);
  }
  return NetworkGraph::from_edges(n, std::move(edges));
}

// ---- file import / export --------------------------------------------------

NetworkGraph parse_graph(std::string_view text, ComponentPolicy policy) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<double> latency;
  std::unordered_set<std::uint64_t> seen;

  auto intern = [&](std::string_view token) {
    auto [it, inserted] = ids.try_emplace(std::string(token),
                                          static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto tokens = detail::split_ws(line);
    if (tokens.size() != 2 && tokens.size() != 3)
      throw FormatError("expected `node node [latency_ms]`", line_no);
    double lat = kLatencyFloorMs;
    if (tokens.size() == 3) {
      auto parsed = detail::parse_double(tokens[2]);
      if (!parsed || !(*parsed >= kLatencyFloorMs) || !std::isfinite(*parsed))
        throw FormatError("invalid latency `" + std::string(tokens[2]) + "`", line_no);
      lat = *parsed;
    }
    NodeId a = intern(tokens[0]);
    NodeId b = intern(tokens[1]);
    if (a == b) continue;
    if (!seen.insert(edge_key(a, b)).second) continue;
    edges.push_back({a, b});
    latency.push_back(lat);
  }
  if (edges.empty()) throw FormatError("graph file contains no edges", 0);

  // Self-loop-only nodes are interned but edgeless; they form their own
  // components and are dropped with the rest of the minor components.
  std::size_t num_comp = 0;
  const std::size_t n = labels.size();
  auto comp = components(n, edges, &num_comp);
  std::size_t keep = 0;
  if (num_comp > 1) {
    if (policy == ComponentPolicy::kReject)
      throw FormatError("graph is disconnected (" + std::to_string(num_comp) +
                            " components)", 0);
    std::vector<std::size_t> size(num_comp, 0);
    for (std::size_t c : comp) ++size[c];
    keep = static_cast<std::size_t>(
        std::max_element(size.begin(), size.end()) - size.begin());
    spdlog::warn("graph has {} components; keeping the largest ({} of {} nodes)",
                 num_comp, size[keep], n);
  }

  std::vector<NodeId> remap(n, std::numeric_limits<NodeId>::max());
  std::vector<std::string> kept_labels;
  for (NodeId v = 0; v < n; ++v) {
    if (comp[v] != keep) continue;
    remap[v] = static_cast<NodeId>(kept_labels.size());
    kept_labels.push_back(std::move(labels[v]));
  }
  std::vector<Edge> kept_edges;
  std::map<std::uint64_t, double> kept_latency;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (comp[edges[i].u] != keep) continue;
    Edge e{remap[edges[i].u], remap[edges[i].v]};
    kept_edges.push_back(e);
    kept_latency.emplace(edge_key(e.u, e.v), latency[i]);
  }
  const std::size_t kept_n = kept_labels.size();
  NetworkGraph g = NetworkGraph::from_edges(kept_n, std::move(kept_edges),
                                            std::move(kept_labels));
  std::vector<double> lat(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i)
    lat[i] = kept_latency.at(edge_key(g.edges()[i].u, g.edges()[i].v));
  return g.with_weights(std::move(lat), std::vector<double>(kept_n, 1.0));
}

NetworkGraph load_graph(const std::filesystem::path& path, ComponentPolicy policy) {
  return parse_graph(detail::read_file(path), policy);
}

void save_graph(const NetworkGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "# nodes " << g.num_nodes() << " edges " << g.num_edges() << "\n";
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    out << g.label(e.u) << ' ' << g.label(e.v) << ' '
        << detail::format_double(g.edge_latencies()[i]) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

NetworkGraph load_node_weights(const NetworkGraph& g,
                               const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  std::vector<double> weights(g.node_weights().begin(), g.node_weights().end());
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto tokens = detail::split_ws(line);
    if (tokens.size() != 2) throw FormatError("expected `node weight`", line_no);
    auto node = g.find_label(tokens[0]);
    if (!node) {
      // Nodes outside the retained component are expected in snapshot files.
      continue;
    }
    auto w = detail::parse_double(tokens[1]);
    if (!w || !std::isfinite(*w) || *w < 0.0)
      throw FormatError("invalid weight `" + std::string(tokens[1]) + "`", line_no);
    weights[*node] = *w;
  }
  std::vector<double> lat(g.edge_latencies().begin(), g.edge_latencies().end());
  return g.with_weights(std::move(lat), std::move(weights));
}

// ---- weights -----------------------------------------------------------------

void WeightGeneratorSpec::validate() const {
  if (!(normal_mean_ms > 0.0)) throw ParameterError("normal_mean_ms must be > 0");
  if (!(normal_std_ms >= 0.0)) throw ParameterError("normal_std_ms must be >= 0");
  if (!(stake_lognormal_sigma >= 0.0))
    throw ParameterError("stake_lognormal_sigma must be >= 0");
}

NetworkGraph assign_weights(const NetworkGraph& g, const WeightGeneratorSpec& spec,
                            Seed seed) {
  spec.validate();
  std::vector<double> lat(g.num_edges(), kLatencyFloorMs);
  Rng edge_rng(derive_seed(seed, 0xed6e));
  switch (spec.edge_mode) {
    case EdgeWeightMode::kNormal:
      for (double& l : lat)
        l = std::max(kLatencyFloorMs,
                     edge_rng.normal(spec.normal_mean_ms, spec.normal_std_ms));
      break;
    case EdgeWeightMode::kUniform: {
      const double half = std::sqrt(3.0) * spec.normal_std_ms;
      for (double& l : lat)
        l = std::max(kLatencyFloorMs, edge_rng.uniform(spec.normal_mean_ms - half,
                                                       spec.normal_mean_ms + half));
      break;
    }
    case EdgeWeightMode::kUnweighted:
      break;
  }
  std::vector<double> weight(g.num_nodes(), 1.0);
  if (spec.node_mode == NodeWeightMode::kStake) {
    Rng node_rng(derive_seed(seed, 0x57a4e));
    for (double& w : weight)
      w = node_rng.lognormal(spec.stake_lognormal_mu, spec.stake_lognormal_sigma);
  }
  return g.with_weights(std::move(lat), std::move(weight));
}

// ---- centrality --------------------------------------------------------------

std::vector<double> betweenness_centrality(const NetworkGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<double> bc(n, 0.0);
  std::vector<std::vector<NodeId>> preds(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<long> dist(n);
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<NodeId> queue(n);
  for (NodeId s = 0; s < n; ++s) {
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      NodeId v = queue[head++];
      order.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  for (double& b : bc) b /= 2.0;
  return bc;
}

std::vector<NodeId> centrality_ranking(const NetworkGraph& g, CentralityMetric metric) {
  const std::size_t n = g.num_nodes();
  // Integer keys so floating noise in betweenness sums cannot split ties.
  std::vector<long long> key(n);
  if (metric == CentralityMetric::kDegree) {
    for (NodeId v = 0; v < n; ++v) key[v] = static_cast<long long>(g.degree(v));
  } else {
    auto bc = betweenness_centrality(g);
    for (NodeId v = 0; v < n; ++v) key[v] = std::llround(bc[v] * 1e6);
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return key[a] > key[b]; });
  return order;
}

std::vector<NodeId> get_central_nodes(const NetworkGraph& g, std::size_t count,
                                      CentralityMetric metric) {
  if (count > g.num_nodes())
    throw ParameterError("requested more central nodes than the graph has");
  auto order = centrality_ranking(g, metric);
  order.resize(count);
  return order;
}

// ---- shortest paths ----------------------------------------------------------

namespace {

std::vector<double> dijkstra(const NetworkGraph& g, NodeId source,
                             std::optional<NodeId> target) {
  if (!g.contains(source)) throw ParameterError("source node out of range");
  std::vector<double> dist(g.num_nodes(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    if (target && v == *target) break;
    auto nb = g.neighbors(v);
    auto lat = g.neighbor_latencies(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const double nd = d + lat[i];
      if (nd < dist[nb[i]]) {
        dist[nb[i]] = nd;
        heap.emplace(nd, nb[i]);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<double> shortest_path_latencies(const NetworkGraph& g, NodeId source) {
  return dijkstra(g, source, std::nullopt);
}

double shortest_path_latency(const NetworkGraph& g, NodeId source, NodeId target) {
  if (!g.contains(target)) throw ParameterError("target node out of range");
  return dijkstra(g, source, target)[target];
}

std::string_view to_string(CentralityMetric metric) {
  return metric == CentralityMetric::kDegree ? "degree" : "betweenness";
}

std::optional<CentralityMetric> parse_centrality_metric(std::string_view s) {
  if (s == "degree") return CentralityMetric::kDegree;
  if (s == "betweenness") return CentralityMetric::kBetweenness;
  return std::nullopt;
}

}  // namespace gossipsim
