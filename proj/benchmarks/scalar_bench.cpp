// Copyright 2026 The dastable Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "dastable/mult_naturals.hpp"
#include "dastable/random_source.hpp"
#include "dastable/scalar_laws.hpp"

namespace dastable {
namespace {

// Exponents are passed as percent so they can be benchmark arguments.
Exponent percent(std::int64_t a) { return Exponent(static_cast<double>(a) / 100.0); }

void BM_Sibuya(benchmark::State& state) {
  const Exponent alpha = percent(state.range(0));
  RandomSource rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_sibuya(alpha, rng));
}
BENCHMARK(BM_Sibuya)->Arg(30)->Arg(50)->Arg(80)->Arg(100);

void BM_PositiveStable(benchmark::State& state) {
  const Exponent alpha = percent(state.range(0));
  RandomSource rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(sample_positive_stable(alpha, rng));
}
BENCHMARK(BM_PositiveStable)->Arg(30)->Arg(50)->Arg(80);

void BM_DiscreteStable(benchmark::State& state) {
  const DiscreteStableParams params(2.0, percent(state.range(0)));
  const auto route = static_cast<DiscreteStableRoute>(state.range(1));
  state.SetLabel(std::string(to_string(route)));
  RandomSource rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_discrete_stable(params, route, rng));
}
BENCHMARK(BM_DiscreteStable)->ArgsProduct({{30, 50, 80}, {0, 1}});

void BM_PmfOracle(benchmark::State& state) {
  const DiscreteStableParams params(1.0, Exponent(0.5));
  const auto n_max = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discrete_stable_pmf_oracle(params, n_max));
}
BENCHMARK(BM_PmfOracle)->Arg(30)->Arg(300)->Arg(3000);

void BM_MultStableSample(benchmark::State& state) {
  const PrimeBasis basis{{2, 3, 5}, {0.1, 0.2, 0.3}};
  RandomSource rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(sample_mult_stable(basis, Exponent(0.5), rng));
}
BENCHMARK(BM_MultStableSample);

void BM_MultStableProb(benchmark::State& state) {
  const PrimeBasis basis{{2, 3, 5}, {0.1, 0.2, 0.3}};
  for (auto _ : state) benchmark::DoNotOptimize(mult_stable_prob(Natural{2 * 2 * 3 * 5 * 5 * 5}, basis, Exponent(0.5)));
}
BENCHMARK(BM_MultStableProb);

}  // namespace
}  // namespace dastable

BENCHMARK_MAIN();
