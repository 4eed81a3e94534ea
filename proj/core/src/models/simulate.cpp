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

#include "pgas/models/simulate.hpp"

#include <stdexcept>

namespace pgas {

SimulatedData simulate_data(const StateSpaceModel& model, std::size_t horizon, RandomSource& rng) {
  if (horizon == 0) throw std::invalid_argument("simulate_data: horizon must be > 0");
  SimulatedData data{Trajectory(horizon, model.state_dim()), Trajectory(horizon, model.obs_dim())};
  for (std::size_t t = 0; t < horizon; ++t) {
    if (t == 0) {
      model.sample_initial(rng, data.states.at(0));
    } else {
      model.sample_transition(t, data.states.at(t - 1), rng, data.states.at(t));
    }
    model.sample_observation(t, data.states.at(t), rng, data.observations.at(t));
  }
  return data;
}

}  // namespace pgas
