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
#include <vector>

#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"
#include "pgas/samplers.hpp"
#include "pgas/target.hpp"

namespace pgas {

/// Gaussian ABC kernel K_eps(x, x') = exp(-|S(x) - S(x')|^2 / (2 eps)).
/// eps is on the scale of a squared distance (a variance), not a standard
/// deviation. S divides componentwise by `scale`; empty `scale` is the identity.
/// eps = 0 selects the exact point-mass limit.
struct AbcKernel {
  double epsilon = 1.0;
  std::vector<double> scale;

  void validate(std::size_t dim) const;
};

/// -|S(x) - S(x_ref)|^2 / (2 eps). Rejects eps <= 0.
double abc_kernel_logeval(const AbcKernel& kernel, ConstState x, ConstState x_ref);

/// ABC ancestor draw for the reference at t >= 1: N - 1 candidates
/// (a ~ w_{t-1}, x = sample_transition(x_{t-1}^a)) weighted by K_eps against
/// x_ref, the reference itself weighted by K_eps(x_ref, x_ref). Returns the
/// winning candidate's ancestor, or N - 1 for the reference. With eps = 0 it
/// returns N - 1 without drawing anything.
std::size_t abc_ancestor_step(const ParticleSystem& system, std::size_t t, ConstState x_ref,
                              const StateSpaceModel& model, const AbcKernel& kernel, RandomSource& rng);

/// PGAS with abc_ancestor_step in place of ancestor sampling. The transition
/// density of `target.model()` is never evaluated.
SweepRecord pgas_abc_sweep(const Trajectory& reference, const SsmTarget& target, std::size_t num_particles,
                           const AbcKernel& kernel, RandomSource& rng, const SweepOptions& options = {});

}  // namespace pgas
