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

// Experiment configuration: flat `dotted.key = value` text. List-valued keys
// take comma-separated values and span the sweep; seeds also accept
// inclusive ranges (`seeds = 1..10`).
//
//   topology.kind                 regular | scale_free | file
//   topology.n, topology.k        regular graph size / degree
//   topology.n, topology.m        scale-free size / attachment count
//   topology.path                 edge-list file (relative to the config file)
//   topology.components           largest | reject      (default largest)
//   weights.node                  stake | uniform       (default stake)
//   weights.edge                  normal | uniform | unweighted (default normal)
//   weights.normal_mean_ms        default 171
//   weights.normal_std_ms         default 76
//   weights.stake_mu              default 7
//   weights.stake_sigma           default 1.5
//   weights.node_file             optional `node weight` file
//   protocol.kind                 list of broadcast | dandelion | dandelion_pp | onion
//   protocol.broadcast_mode       list of all | sqrt    (default all)
//   protocol.broadcast_probability list in (0, 1]      (default 0.5)
//   protocol.stem_cap             default 40
//   protocol.onion_path_len       default 3
//   adversary.ratio               list in [0, 1)
//   adversary.nodes               explicit node list (exclusive with ratio)
//   adversary.placement           list of random | degree | betweenness
//   adversary.active              list of true | false  (default false)
//   adversary.protocol_aware      default true
//   estimator                     list of first_reach | first_sent
//   num_msg                       messages per cell and seed
//   seeds                         list / ranges of seeds
//   use_node_weights              default true
//   output_path                   report directory

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gossipsim/adversary.hpp"
#include "gossipsim/estimators.hpp"
#include "gossipsim/network.hpp"
#include "gossipsim/protocols.hpp"
#include "gossipsim/rng.hpp"

namespace gossipsim {

enum class TopologyKind { kRegular, kScaleFree, kFile };

std::string_view to_string(TopologyKind kind);

struct TopologySpec {
  TopologyKind kind = TopologyKind::kRegular;
  std::size_t n = 0;
  std::size_t k = 0;  // regular degree
  std::size_t m = 0;  // scale-free attachment count
  std::filesystem::path path;
  ComponentPolicy components = ComponentPolicy::kLargest;
};

struct ExperimentConfig {
  TopologySpec topology;
  WeightGeneratorSpec weights;
  std::optional<std::filesystem::path> node_weight_file;

  std::vector<ProtocolKind> protocols{ProtocolKind::kBroadcast};
  std::vector<BroadcastMode> broadcast_modes{BroadcastMode::kAll};
  std::vector<double> broadcast_probabilities{0.5};
  std::uint32_t stem_cap = 40;
  std::uint32_t onion_path_len = 3;

  std::vector<double> adversary_ratios;
  std::vector<NodeId> adversary_nodes;
  std::vector<Placement> placements{Placement::kRandom};
  std::vector<bool> active{false};
  bool protocol_aware = true;

  std::vector<EstimatorKind> estimators{EstimatorKind::kFirstSent};
  std::size_t num_msg = 100;
  std::vector<Seed> seeds;
  bool use_node_weights = true;
  std::filesystem::path output_path;

  // Checks everything that does not need the graph. Throws ConfigError.
  void validate() const;
};

// Throws ConfigError (with the offending key) on unknown keys, duplicate
// keys, malformed values or failed validation. Relative paths are resolved
// against `base_dir`.
ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& base_dir = {});

// Throws IoError if the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace gossipsim
