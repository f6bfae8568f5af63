/*
 * Copyright (c) 2026, The ctsf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "ctsf/bisim.hh"
#include "ctsf/consensus.hh"
#include "ctsf/evaluation.hh"
#include "ctsf/graph.hh"
#include "ctsf/lts.hh"
#include "ctsf/standard_form.hh"

using namespace ctsf;

namespace {

Model two_agents() { return make_model(ProblemInstance::make({5, 7})); }

ExploreOptions one_thread() {
  ExploreOptions o;
  o.threads = 1;
  return o;
}

void BM_ExploreRepresentative(benchmark::State& state) {
  Model m = two_agents();
  std::size_t states = 0;
  for (auto _ : state) {
    LtsGraph g = explore(m, Mode::kRepresentative, one_thread());
    states = g.size();
    benchmark::DoNotOptimize(states);
  }
  state.counters["states"] = static_cast<double>(states);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * states));
}
BENCHMARK(BM_ExploreRepresentative)->Unit(benchmark::kMillisecond);

void BM_ExploreCalculus(benchmark::State& state) {
  Model m = two_agents();
  std::size_t states = 0;
  for (auto _ : state) {
    LtsGraph g = explore(m, Mode::kCalculus, one_thread());
    states = g.size();
    benchmark::DoNotOptimize(states);
  }
  state.counters["states"] = static_cast<double>(states);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * states));
}
BENCHMARK(BM_ExploreCalculus)->Unit(benchmark::kMillisecond);

void BM_EvaluateInitial(benchmark::State& state) {
  Model m = make_model(ProblemInstance::make({1, 2, 3}));
  Configuration c = select_ti(make_initial(m.instance)).at(0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(c, m.program));
}
BENCHMARK(BM_EvaluateInitial);

void BM_SfRoundTrip(benchmark::State& state) {
  Model m = make_model(ProblemInstance::make({1, 2, 3}));
  Representative r = initial_representatives(m).at(0);
  for (auto _ : state) benchmark::DoNotOptimize(sf(sfi(r, m), m));
}
BENCHMARK(BM_SfRoundTrip);

void BM_CalculusSuccessors(benchmark::State& state) {
  Model m = make_model(ProblemInstance::make({1, 2, 3}));
  Representative r = initial_representatives(m).at(0);
  for (auto _ : state) benchmark::DoNotOptimize(calculus_successors(r, m));
}
BENCHMARK(BM_CalculusSuccessors);

void BM_RepresentativeSuccessors(benchmark::State& state) {
  Model m = make_model(ProblemInstance::make({1, 2, 3}));
  Representative r = initial_representatives(m).at(0);
  for (auto _ : state) benchmark::DoNotOptimize(representative_successors(r, m));
}
BENCHMARK(BM_RepresentativeSuccessors);

void BM_WeakBisim(benchmark::State& state) {
  Model m = two_agents();
  LtsGraph system = explore(m, Mode::kRepresentative, one_thread());
  LtsGraph spec = specification_graph(m);
  for (auto _ : state) benchmark::DoNotOptimize(weak_bisim(system, spec).bisimilar);
  state.counters["states"] = static_cast<double>(system.size());
}
BENCHMARK(BM_WeakBisim)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
