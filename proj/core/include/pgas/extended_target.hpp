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

#include "pgas/particle_system.hpp"
#include "pgas/target.hpp"

namespace pgas {

/// Unnormalised log of the extended target over all particles, ancestors and
/// the final index k:
///   gamma_{T-1}(X^k) / N^T * prod_{i != b_0} r_0(x_0^i)
///     * prod_{t >= 1} prod_{i != b_t} wbar_{t-1}^{a_t^i} r_t(x_t^i | x_{t-1}^{a_t^i}),
/// with b traced back from k and the weights recomputed from the states.
double log_phi(const ParticleSystem& system, std::size_t k, const TargetSequence& target);

}  // namespace pgas
