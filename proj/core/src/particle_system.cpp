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

#include "pgas/particle_system.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgas {

ParticleSystem::ParticleSystem(std::size_t num_particles, std::size_t horizon, std::size_t dim)
    : n_(num_particles),
      horizon_(horizon),
      dim_(dim),
      states_(num_particles * horizon * dim, 0.0),
      log_weights_(num_particles * horizon, 0.0),
      ancestors_(num_particles * horizon, 0) {
  if (num_particles == 0 || horizon == 0 || dim == 0) throw std::invalid_argument("empty particle system");
  for (std::size_t i = 0; i < n_; ++i) ancestors_[i] = i;
}

TracedPath trace_ancestry(const ParticleSystem& system, std::size_t k) {
  const std::size_t horizon = system.horizon();
  if (k >= system.num_particles()) throw std::out_of_range("trace_ancestry: final index out of range");
  TracedPath path{Trajectory(horizon, system.dim()), std::vector<std::size_t>(horizon)};
  std::size_t b = k;
  for (std::size_t t = horizon; t-- > 0;) {
    path.indexes[t] = b;
    auto src = system.state(t, b);
    std::copy(src.begin(), src.end(), path.trajectory.at(t).begin());
    if (t > 0) {
      b = system.ancestor(t, b);
      if (b >= system.num_particles()) throw std::out_of_range("trace_ancestry: corrupt ancestor index");
    }
  }
  return path;
}

}  // namespace pgas
