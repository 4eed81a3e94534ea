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

#include "pgas/smc.hpp"

#include <stdexcept>

#include "pgas/log_weights.hpp"

namespace pgas {

void smc_initialize(ParticleSystem& system, const TargetSequence& target, std::optional<std::size_t> skip,
                    RandomSource& rng, WeightMonitor* monitor) {
  const std::size_t n = system.num_particles();
  for (std::size_t i = 0; i < n; ++i) {
    if (skip && *skip == i) continue;
    system.ancestor(0, i) = i;
    target.propose(0, {}, rng, system.state(0, i));
    const double w = weight_function(target, 0, {}, system.state(0, i));
    system.log_weight(0, i) = w;
    if (monitor) monitor->observe(w);
  }
}

void smc_step(ParticleSystem& system, std::size_t t, const TargetSequence& target, std::optional<std::size_t> skip,
              RandomSource& rng, WeightMonitor* monitor) {
  if (t == 0 || t >= system.horizon()) throw std::out_of_range("smc_step: time index out of range");
  const CategoricalSampler resampler(system.log_weights(t - 1));
  const std::size_t n = system.num_particles();
  for (std::size_t i = 0; i < n; ++i) {
    if (skip && *skip == i) continue;
    const std::size_t a = resampler.draw(rng);
    system.ancestor(t, i) = a;
    const auto prev = system.state(t - 1, a);
    target.propose(t, prev, rng, system.state(t, i));
    const double w = weight_function(target, t, prev, system.state(t, i));
    system.log_weight(t, i) = w;
    if (monitor) monitor->observe(w);
  }
}

double log_likelihood_estimate(const ParticleSystem& system) {
  const double log_n = std::log(static_cast<double>(system.num_particles()));
  double total = 0.0;
  for (std::size_t t = 0; t < system.horizon(); ++t) total += log_sum_exp(system.log_weights(t)) - log_n;
  return total;
}

}  // namespace pgas
