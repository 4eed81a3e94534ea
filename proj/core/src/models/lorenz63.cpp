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

#include "pgas/models/lorenz63.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pgas/errors.hpp"

namespace pgas {

void Lorenz63Spec::validate() const {
  if (substeps < 1) throw std::invalid_argument("Lorenz63Spec: substeps must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("Lorenz63Spec: dt must be > 0");
  if (!(obs_sd > 0.0)) throw std::invalid_argument("Lorenz63Spec: obs_sd must be > 0");
  for (double s : noise_sd) {
    if (!(s >= 0.0)) throw std::invalid_argument("Lorenz63Spec: noise_sd must be >= 0");
  }
}

std::array<double, 3> lorenz_drift(const Lorenz63Spec& spec, ConstState x) {
  return {spec.sigma * (x[1] - x[0]), x[0] * (spec.rho - x[2]) - x[1], x[0] * x[1] - spec.beta * x[2]};
}

void lorenz_transition_sample(const Lorenz63Spec& spec, ConstState x, RandomSource& rng, MutableState out) {
  const double h = spec.dt / static_cast<double>(spec.substeps);
  const double root_h = std::sqrt(h);
  std::array<double, 3> state{x[0], x[1], x[2]};
  for (std::size_t k = 0; k < spec.substeps; ++k) {
    const auto drift = lorenz_drift(spec, state);
    for (std::size_t j = 0; j < 3; ++j) state[j] += drift[j] * h + spec.noise_sd[j] * root_h * rng.normal();
  }
  for (std::size_t j = 0; j < 3; ++j) out[j] = state[j];
}

Lorenz63Model::Lorenz63Model(Lorenz63Spec spec) : spec_(std::move(spec)) { spec_.validate(); }

void Lorenz63Model::sample_initial(RandomSource& rng, MutableState out) const {
  for (double& v : out) v = rng.normal();
}

double Lorenz63Model::log_initial(ConstState x) const {
  double total = 0.0;
  for (double v : x) total += -0.5 * (v * v + std::log(2.0 * std::numbers::pi));
  return total;
}

void Lorenz63Model::sample_transition(std::size_t, ConstState prev, RandomSource& rng, MutableState out) const {
  lorenz_transition_sample(spec_, prev, rng, out);
}

double Lorenz63Model::log_transition(std::size_t, ConstState, ConstState) const {
  density_calls_.fetch_add(1);
  throw IntractableTransition(name());
}

void Lorenz63Model::sample_observation(std::size_t, ConstState x, RandomSource& rng, MutableState y) const {
  y[0] = x[0] + spec_.obs_sd * rng.normal();
}

double Lorenz63Model::log_observation(std::size_t, ConstState x, ConstState y) const {
  const double z = (y[0] - x[0]) / spec_.obs_sd;
  return -0.5 * (z * z + std::log(2.0 * std::numbers::pi)) - std::log(spec_.obs_sd);
}

}  // namespace pgas
