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

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"

namespace pgas {

/// Draw from the inverse-gamma law with density proportional to
/// theta^{-shape-1} exp(-scale / theta).
inline double sample_inverse_gamma(double shape, double scale, RandomSource& rng) {
  if (!(shape > 0.0 && scale > 0.0)) throw std::invalid_argument("sample_inverse_gamma: bad parameters");
  return 1.0 / rng.gamma(shape, 1.0 / scale);
}

struct GibbsChain {
  std::vector<double> theta;
  std::vector<Trajectory> states;
};

/// Two-stage Gibbs sampler: theta ~ theta_sampler(X, rng), then
/// X ~ state_sweep(X, theta, rng), `iterations` times. Both draws of every
/// iteration are recorded when `keep_states` is set; theta always is.
template <class ThetaSampler, class StateSweep>
GibbsChain gibbs_loop(Trajectory states, ThetaSampler&& theta_sampler, StateSweep&& state_sweep,
                      std::size_t iterations, RandomSource& rng, bool keep_states = true) {
  GibbsChain chain;
  chain.theta.reserve(iterations);
  if (keep_states) chain.states.reserve(iterations);
  for (std::size_t it = 0; it < iterations; ++it) {
    const double theta = theta_sampler(static_cast<const Trajectory&>(states), rng);
    states = state_sweep(static_cast<const Trajectory&>(states), theta, rng);
    chain.theta.push_back(theta);
    if (keep_states) chain.states.push_back(states);
  }
  return chain;
}

}  // namespace pgas
