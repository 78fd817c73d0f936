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

#include <benchmark/benchmark.h>

#include "gossipsim/adversary.hpp"
#include "gossipsim/estimators.hpp"
#include "gossipsim/network.hpp"
#include "gossipsim/protocols.hpp"
#include "gossipsim/sim_engine.hpp"

namespace {

using namespace gossipsim;

NetworkGraph weighted_regular(std::size_t n, std::size_t k) {
  return assign_weights(gen_random_regular(n, k, 1), WeightGeneratorSpec{}, 2);
}

void BM_RandomRegular(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Seed seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_random_regular(n, 50, ++seed));
}
BENCHMARK(BM_RandomRegular)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ScaleFree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Seed seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_scale_free(n, 3, ++seed));
}
BENCHMARK(BM_ScaleFree)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Betweenness(benchmark::State& state) {
  const NetworkGraph g = gen_scale_free(static_cast<std::size_t>(state.range(0)), 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality(g));
}
BENCHMARK(BM_Betweenness)->Arg(1000)->Unit(benchmark::kMillisecond);

// One message per iteration: spawn, full propagation, first-sent estimate.
void run_messages(benchmark::State& state, ProtocolKind kind, BroadcastMode mode) {
  const NetworkGraph g = weighted_regular(1000, 50);
  ProtocolConfig pc;
  pc.kind = kind;
  pc.broadcast_mode = mode;
  pc.broadcast_probability = 0.5;
  auto protocol = make_protocol(g, pc, 3);
  AdversaryConfig ac;
  ac.ratio = 0.1;
  Adversary adversary(g.num_nodes(), place_adversaries(g, ac, 4), false);
  Engine engine(*protocol, &adversary, 5);
  MessageId id = 0;
  for (auto _ : state) {
    NodeId origin = static_cast<NodeId>(id % g.num_nodes());
    while (adversary.is_adversarial(origin)) origin = (origin + 1) % g.num_nodes();
    SimMessage msg = engine.spawn_message(id, origin);
    engine.run_message(msg);
    benchmark::DoNotOptimize(estimate(EstimatorKind::kFirstSent, id,
                                      adversary.observations(id), g, adversary.mask()));
    adversary.clear_log();
    ++id;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}

void BM_BroadcastAll(benchmark::State& s) { run_messages(s, ProtocolKind::kBroadcast, BroadcastMode::kAll); }
void BM_BroadcastSqrt(benchmark::State& s) { run_messages(s, ProtocolKind::kBroadcast, BroadcastMode::kSqrt); }
void BM_Dandelion(benchmark::State& s) { run_messages(s, ProtocolKind::kDandelion, BroadcastMode::kSqrt); }
void BM_DandelionPP(benchmark::State& s) { run_messages(s, ProtocolKind::kDandelionPP, BroadcastMode::kSqrt); }
void BM_Onion(benchmark::State& s) { run_messages(s, ProtocolKind::kOnion, BroadcastMode::kSqrt); }
BENCHMARK(BM_BroadcastAll)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BroadcastSqrt)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dandelion)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DandelionPP)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Onion)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
