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

#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"
#include "pgas/target.hpp"

namespace pgas {

struct SimulatedData {
  Trajectory states;
  Trajectory observations;
};

/// Forward simulation x_0 ~ mu, x_t ~ f(. | x_{t-1}), y_t ~ g(. | x_t).
SimulatedData simulate_data(const StateSpaceModel& model, std::size_t horizon, RandomSource& rng);

}  // namespace pgas
