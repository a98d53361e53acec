// Copyright 2026 The Authors.
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

#include "feederlab/intervention.hpp"
#include "feederlab/market.hpp"
#include "feederlab/sim_discrete.hpp"

namespace feederlab {
namespace {

MarketParams pareto_market() { return MarketParams::make(0.25, 0.8, Distribution::pareto(3.0)); }

MarketParams normal_market() {
  return MarketParams::make(0.5, 0.8, Distribution::normal(1550.0, 310.0));
}

void BM_OptimalIntervalsClosedForm(benchmark::State& state) {
  const auto m = pareto_market();
  for (auto _ : state) {
    for (int i = 1; i <= 8; ++i) {
      benchmark::DoNotOptimize(optimal_interval_mm(m, 0.1 * i));
      benchmark::DoNotOptimize(optimal_interval_pauc(m, 0.1 * i));
    }
  }
}
BENCHMARK(BM_OptimalIntervalsClosedForm);

void BM_PaucQuadraturePareto(benchmark::State& state) {
  const auto m = pareto_market();
  for (auto _ : state) benchmark::DoNotOptimize(pauc_quadrature(m, {1.2187, 1.3026}));
}
BENCHMARK(BM_PaucQuadraturePareto);

void BM_PaucQuadratureNormal(benchmark::State& state) {
  const auto m = normal_market();
  for (auto _ : state) benchmark::DoNotOptimize(pauc_quadrature(m, {1700.0, 2230.0}));
}
BENCHMARK(BM_PaucQuadratureNormal);

void BM_MostMistreatedScan(benchmark::State& state) {
  const auto m = normal_market();
  for (auto _ : state) benchmark::DoNotOptimize(mistreatment_max_numeric(m, {1700.0, 2230.0}));
}
BENCHMARK(BM_MostMistreatedScan);

void BM_GridOptimizer(benchmark::State& state) {
  const auto m = normal_market();
  const auto measure = state.range(0) == 0 ? Measure::kMm : Measure::kPauc;
  for (auto _ : state) benchmark::DoNotOptimize(optimal_interval_numeric(m, 0.3, measure, 200));
}
BENCHMARK(BM_GridOptimizer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BuildMarket(benchmark::State& state) {
  SimConfig c;
  c.n_schools = static_cast<int>(state.range(0));
  c.capacity = 100;
  c.n_students = static_cast<std::int64_t>(c.n_schools) * c.capacity;
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(build_market(c, seed++));
  state.SetItemsProcessed(state.iterations() * c.n_students);
}
BENCHMARK(BM_BuildMarket)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RunExperiment(benchmark::State& state) {
  SimConfig c;
  c.replications = 20;
  const DebiasInterval interval = optimal_interval_pauc(c.market, 0.3).interval;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c, interval));
}
BENCHMARK(BM_RunExperiment)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace feederlab

BENCHMARK_MAIN();
