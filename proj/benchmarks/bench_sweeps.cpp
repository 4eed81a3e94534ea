// Copyright 2026 The pgas Authors
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

#include <pgas/abc.hpp>
#include <pgas/models/autoregressive.hpp>
#include <pgas/models/linear_gaussian.hpp>
#include <pgas/models/lorenz63.hpp>
#include <pgas/models/simulate.hpp>
#include <pgas/rejuvenation.hpp>
#include <pgas/samplers.hpp>

namespace pgas {
namespace {

// One conditional SMC sweep per iteration; the reference is carried over.

void BM_PgSweepLgssm(benchmark::State& state) {
  const LinearGaussianModel model(scalar_lgssm(0.9, 1.0, 1.0));
  RandomSource rng(1);
  const auto data = simulate_data(model, 100, rng);
  const SsmTarget target(model, data.observations);
  const auto n = static_cast<std::size_t>(state.range(0));
  ParticleSystem workspace(n, 100, 1);
  Trajectory ref = data.states;
  for (auto _ : state) ref = pg_sweep(ref, target, n, rng, {nullptr, &workspace}).trajectory;
}
BENCHMARK(BM_PgSweepLgssm)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

void BM_PgasSweepLgssm(benchmark::State& state) {
  const LinearGaussianModel model(scalar_lgssm(0.9, 1.0, 1.0));
  RandomSource rng(1);
  const auto data = simulate_data(model, 100, rng);
  const SsmTarget target(model, data.observations);
  const auto n = static_cast<std::size_t>(state.range(0));
  ParticleSystem workspace(n, 100, 1);
  Trajectory ref = data.states;
  for (auto _ : state) ref = pgas_sweep(ref, target, n, rng, {nullptr, &workspace}).trajectory;
}
BENCHMARK(BM_PgasSweepLgssm)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

void BM_RejuvenatedSweepAr(benchmark::State& state) {
  const ArModel model{ArSsmSpec{}};
  RandomSource rng(2);
  const std::size_t horizon = 200;
  const auto data = simulate_data(model, horizon, rng);
  const SsmTarget target(model, data.observations);
  const auto ell = static_cast<std::size_t>(state.range(0));
  const RejuvenationPlan plan(ell, horizon);
  const GaussianBridgeProposal bridge(target, model.dynamics(), Eigen::VectorXd::Zero(5), model.initial_covariance(),
                                      ell);
  const CisKernel cis(bridge);
  ParticleSystem workspace(20, horizon, 5);
  Trajectory ref = data.states;
  for (auto _ : state) {
    ref = pgas_rejuvenated_sweep(ref, target, 20, plan, cis, rng, {nullptr, &workspace}).trajectory;
  }
}
BENCHMARK(BM_RejuvenatedSweepAr)->DenseRange(4, 6, 1)->Unit(benchmark::kMillisecond);

void BM_AbcSweepLorenz(benchmark::State& state) {
  const Lorenz63Model model{Lorenz63Spec{}};
  RandomSource rng(3);
  const std::size_t horizon = 200;
  const auto data = simulate_data(model, horizon, rng);
  const SsmTarget target(model, data.observations);
  const auto n = static_cast<std::size_t>(state.range(0));
  const AbcKernel kernel{1.0, {}};
  ParticleSystem workspace(n, horizon, 3);
  Trajectory ref = data.states;
  for (auto _ : state) ref = pgas_abc_sweep(ref, target, n, kernel, rng, {nullptr, &workspace}).trajectory;
}
BENCHMARK(BM_AbcSweepLorenz)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pgas

BENCHMARK_MAIN();
