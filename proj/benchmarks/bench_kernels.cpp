// Copyright 2026 The vqebench Authors
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

#include <numbers>
#include <vector>

#include "vqebench/exact.hpp"
#include "vqebench/ising.hpp"
#include "vqebench/optim.hpp"
#include "vqebench/problems.hpp"
#include "vqebench/rng.hpp"
#include "vqebench/simulator.hpp"

namespace {

using namespace vqeb;

std::vector<double> random_angles(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(n);
  for (auto& t : theta) t = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return theta;
}

void BM_PrepareState(benchmark::State& state) {
  const VariationalForm form{static_cast<int>(state.range(0)), 2, Entangler::FullCZ};
  const auto theta = random_angles(form.parameter_count(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(prepare_state(form, theta));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PrepareState)->DenseRange(6, 18, 4);

void BM_Energy(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto h = qubo_to_ising(encode(gen_instance(ProblemClass::MaxCut, q, 3)));
  const auto diag = h.diagonal();
  const auto psi = prepare_state({q, 2, Entangler::FullCZ}, random_angles(2 * static_cast<std::size_t>(q), 2));
  for (auto _ : state) benchmark::DoNotOptimize(energy(psi, diag));
}
BENCHMARK(BM_Energy)->DenseRange(6, 18, 4);

void BM_Diagonal(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto qubo = encode(gen_instance(ProblemClass::Partition, q, 4));
  for (auto _ : state) {
    // A fresh Hamiltonian each time so the cached diagonal is rebuilt.
    const auto h = qubo_to_ising(qubo);
    benchmark::DoNotOptimize(h.diagonal().data());
  }
}
BENCHMARK(BM_Diagonal)->DenseRange(6, 18, 4);

void BM_ExactSolve(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto h = qubo_to_ising(encode(gen_instance(ProblemClass::StableSet, q, 5)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(h));
}
BENCHMARK(BM_ExactSolve)->DenseRange(6, 18, 4);

void BM_RbfSurrogateFit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t m = std::max<std::size_t>(80, 3 * (n + 1));
  const auto points = random_angles(m * n, 6);
  const auto values = random_angles(m, 7);
  CubicRbfSurrogate s;
  for (auto _ : state) {
    s.fit(points, values, n);
    benchmark::DoNotOptimize(s(std::span<const double>(points.data(), n)));
  }
}
BENCHMARK(BM_RbfSurrogateFit)->Arg(12)->Arg(20)->Arg(36);

}  // namespace

BENCHMARK_MAIN();
