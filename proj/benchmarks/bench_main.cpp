// Copyright 2026 The qotsim Authors. All Rights Reserved.
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

#include <vector>

#include "qot/cheating.hpp"
#include "qot/circuit.hpp"
#include "qot/linalg.hpp"
#include "qot/measurement.hpp"
#include "qot/protocol.hpp"

namespace {

using namespace qot;

std::vector<DensityMatrix> protocol_states() {
  std::vector<DensityMatrix> s;
  for (BitPair x : kCyclicInputs) s.push_back(DensityMatrix::pure(encode_input(x)));
  return s;
}

void BM_Fidelity(benchmark::State& st) {
  const auto s = protocol_states();
  const DensityMatrix mix(0.5 * (s[0].matrix() + s[1].matrix()));
  for (auto _ : st) benchmark::DoNotOptimize(fidelity(mix, s[2]));
}
BENCHMARK(BM_Fidelity);

void BM_SrmConstruct(benchmark::State& st) {
  const auto s = protocol_states();
  const std::vector<double> priors(4, 0.25);
  for (auto _ : st) benchmark::DoNotOptimize(srm_construct(s, priors));
}
BENCHMARK(BM_SrmConstruct);

void BM_Protocol(benchmark::State& st) {
  ProtocolConfig cfg;
  cfg.total_rounds = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(run_protocol(cfg, CheatMode::kBob));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Protocol)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_AliceOptimize(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(alice_cheat_optimize(kDefaultSeed, 4));
}
BENCHMARK(BM_AliceOptimize)->Unit(benchmark::kMillisecond);

void BM_LuEquivalence(benchmark::State& st) {
  const StateVector out = prepare_sigma(table_iv_params());
  for (auto _ : st) benchmark::DoNotOptimize(lu_equivalence(out, sigma_target(), 10));
}
BENCHMARK(BM_LuEquivalence)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
