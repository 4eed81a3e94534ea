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

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>

#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"
#include "pgas/target.hpp"

namespace pgas {

/// Running maximum of the weight function W_t over a chain. The uniform
/// ergodicity guarantee assumes sup W_t <= bound; every observation above it
/// is counted.
struct WeightMonitor {
  double bound = std::numeric_limits<double>::infinity();
  double max_log_weight = -std::numeric_limits<double>::infinity();
  std::size_t violations = 0;

  void observe(double log_weight) {
    if (log_weight > max_log_weight) max_log_weight = log_weight;
    if (log_weight > std::log(bound)) ++violations;
  }
  bool fired() const { return violations > 0; }
  double max_weight() const { return std::exp(max_log_weight); }
};

/// Fills column 0: x_0^i ~ r_0, w_0^i = W_0(x_0^i) for every i except `skip`.
void smc_initialize(ParticleSystem& system, const TargetSequence& target, std::optional<std::size_t> skip,
                    RandomSource& rng, WeightMonitor* monitor = nullptr);

/// Fills column t from column t-1: for i != skip, a_t^i ~ w_{t-1} (multinomial),
/// x_t^i ~ r_t(. | x_{t-1}^{a_t^i}), w_t^i = W_t. The `skip` slot is left for the
/// caller. Throws AllWeightsDegenerate if column t-1 has no finite weight.
void smc_step(ParticleSystem& system, std::size_t t, const TargetSequence& target, std::optional<std::size_t> skip,
              RandomSource& rng, WeightMonitor* monitor = nullptr);

/// sum_t log((1/N) sum_i w_t^i) over a completed system.
double log_likelihood_estimate(const ParticleSystem& system);

}  // namespace pgas
