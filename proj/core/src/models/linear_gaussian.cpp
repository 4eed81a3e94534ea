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

#include "pgas/models/linear_gaussian.hpp"

#include "pgas/errors.hpp"

namespace pgas {

LinearGaussianModel::LinearGaussianModel(LgssmSpec spec)
    : spec_(std::move(spec)), initial_(spec_.initial_cov), observation_noise_(spec_.observation_cov) {
  spec_.validate();
}

void LinearGaussianModel::sample_initial(RandomSource& rng, MutableState out) const {
  initial_.sample(spec_.initial_mean, rng, as_vector(out));
}

double LinearGaussianModel::log_initial(ConstState x) const {
  return initial_.log_density(spec_.initial_mean, as_vector(x));
}

void LinearGaussianModel::sample_transition(std::size_t, ConstState prev, RandomSource& rng, MutableState out) const {
  spec_.dynamics.step(as_vector(prev), rng, as_vector(out));
}

double LinearGaussianModel::log_transition(std::size_t, ConstState prev, ConstState x) const {
  return spec_.dynamics.log_transition(as_vector(prev), as_vector(x));
}

void LinearGaussianModel::sample_observation(std::size_t, ConstState x, RandomSource& rng, MutableState y) const {
  observation_noise_.sample(spec_.observation * as_vector(x), rng, as_vector(y));
}

double LinearGaussianModel::log_observation(std::size_t, ConstState x, ConstState y) const {
  return observation_noise_.log_density_residual(as_vector(y) - spec_.observation * as_vector(x));
}

double BlackBoxModel::log_transition(std::size_t, ConstState, ConstState) const {
  density_calls_.fetch_add(1);
  throw IntractableTransition(name());
}

}  // namespace pgas
