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

#include <vector>

#include <pgas/gaussian_bridge.hpp>
#include <pgas/kalman.hpp>
#include <pgas/log_weights.hpp>
#include <pgas/models/autoregressive.hpp>
#include <pgas/models/linear_gaussian.hpp>
#include <pgas/models/simulate.hpp>
#include <pgas/random.hpp>

namespace pgas {
namespace {

std::vector<double> random_log_weights(std::size_t n) {
  RandomSource rng(1);
  std::vector<double> w(n);
  for (double& v : w) v = 5.0 * rng.normal();
  return w;
}

void BM_LogSumExp(benchmark::State& state) {
  const auto w = random_log_weights(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(log_sum_exp(w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogSumExp)->RangeMultiplier(10)->Range(10, 10000);

void BM_NormalizeAndDraw(benchmark::State& state) {
  const auto w = random_log_weights(static_cast<std::size_t>(state.range(0)));
  RandomSource rng(2);
  for (auto _ : state) {
    const auto p = normalize_log_weights(w);
    benchmark::DoNotOptimize(categorical_draw(p, rng));
  }
}
BENCHMARK(BM_NormalizeAndDraw)->RangeMultiplier(10)->Range(10, 10000);

void BM_KalmanBridgeSample(benchmark::State& state) {
  const ArModel model{ArSsmSpec{}};
  const auto ell = static_cast<std::size_t>(state.range(0));
  RandomSource rng(3);
  const Eigen::VectorXd start = Eigen::VectorXd::Ones(5);
  Eigen::VectorXd end = start;
  for (std::size_t s = 0; s <= ell; ++s) {
    Eigen::VectorXd next(5);
    model.dynamics().step(end, rng, next);
    end = next;
  }
  for (auto _ : state) benchmark::DoNotOptimize(kalman_bridge_sample(model.dynamics(), start, end, ell, rng));
}
BENCHMARK(BM_KalmanBridgeSample)->DenseRange(4, 8, 2);

void BM_KalmanSmoother(benchmark::State& state) {
  const LinearGaussianModel model(scalar_lgssm(0.9, 1.0, 1.0));
  RandomSource rng(4);
  const auto data = simulate_data(model, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(kalman_smoother(model.spec(), data.observations));
}
BENCHMARK(BM_KalmanSmoother)->Arg(100)->Arg(1000);

}  // namespace
}  // namespace pgas

BENCHMARK_MAIN();
