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
#include <cstdint>
#include <vector>

#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"
#include "pgas/rejuvenation.hpp"
#include "pgas/smc.hpp"
#include "pgas/target.hpp"

namespace pgas {

struct SweepOptions {
  WeightMonitor* monitor = nullptr;
  /// Reused across sweeps when its shape matches; holds the final particle
  /// system afterwards.
  ParticleSystem* workspace = nullptr;
};

struct SweepRecord {
  Trajectory trajectory;
  /// Reference after any rejuvenation, i.e. the states pinned in slot N.
  Trajectory reference;
  /// ancestor_changed[t] = (a_t^N != N); entry 0 is always 0.
  std::vector<std::uint8_t> ancestor_changed;
  /// Whether the rejuvenation kernel moved the pair at t.
  std::vector<std::uint8_t> kernel_moved;
};

/// log w_{t-1}^i + log gamma increment from x_{t-1}^i into x'_t, for all i.
/// For a state-space model this is log w_{t-1}^i + log f(x'_t | x_{t-1}^i).
/// Throws IntractableTransition when the target cannot evaluate increments.
std::vector<double> ancestor_sampling_logweights(const ParticleSystem& system, std::size_t t,
                                                 const Trajectory& reference, const TargetSequence& target);

/// Strategy for the reference slot of a conditional SMC sweep.
class ReferenceUpdate {
 public:
  virtual ~ReferenceUpdate() = default;
  /// Runs before x'_0 is pinned; may rewrite reference rows. Returns whether it did.
  virtual bool initial(const TargetSequence&, Trajectory&, std::size_t /*num_particles*/, RandomSource&) {
    return false;
  }
  /// Ancestor of the reference at t >= 1, given the completed column t-1. May
  /// rewrite reference rows >= t; sets `moved` when it did.
  virtual std::size_t ancestor(const ParticleSystem& system, std::size_t t, const TargetSequence& target,
                               Trajectory& reference, RandomSource& rng, bool& moved) = 0;
};

/// Conditional SMC with slot N - 1 pinned to the reference, followed by a
/// final draw k ~ w_{T-1} and ancestry trace. The reference-slot updates use
/// their own stream split off `rng` at the start of the sweep, so variants
/// whose updates are deterministic produce identical output.
SweepRecord conditional_smc_sweep(const Trajectory& reference, const TargetSequence& target,
                                  std::size_t num_particles, ReferenceUpdate& update, RandomSource& rng,
                                  const SweepOptions& options = {});

/// Particle Gibbs: a_t^N = N.
SweepRecord pg_sweep(const Trajectory& reference, const TargetSequence& target, std::size_t num_particles,
                     RandomSource& rng, const SweepOptions& options = {});

/// PGAS: a_t^N ~ ancestor_sampling_logweights.
SweepRecord pgas_sweep(const Trajectory& reference, const TargetSequence& target, std::size_t num_particles,
                       RandomSource& rng, const SweepOptions& options = {});

/// PGAS with particle rejuvenation: (a_t^N, Xi_t) ~ K_t, spliced into the
/// reference before x'_t is pinned; Xi_0 is rejuvenated before t = 0.
SweepRecord pgas_rejuvenated_sweep(const Trajectory& reference, const TargetSequence& target,
                                   std::size_t num_particles, const RejuvenationPlan& plan,
                                   const RejuvenationKernel& kernel, RandomSource& rng,
                                   const SweepOptions& options = {});

/// Unconditional SMC followed by k ~ w_{T-1}.
struct SmcDraw {
  Trajectory trajectory;
  double log_likelihood = 0.0;
};
SmcDraw smc_draw(const TargetSequence& target, std::size_t num_particles, RandomSource& rng,
                 const SweepOptions& options = {});

struct PimhState {
  Trajectory trajectory;
  double log_likelihood = 0.0;
};

/// Tries unconditional SMC runs until one is not degenerate.
PimhState pimh_initialize(const TargetSequence& target, std::size_t num_particles, RandomSource& rng,
                          std::size_t max_attempts = 100);

/// Particle independent Metropolis-Hastings step. Returns true on acceptance;
/// degenerate proposals are rejected.
bool pimh_sweep(PimhState& state, const TargetSequence& target, std::size_t num_particles, RandomSource& rng,
                const SweepOptions& options = {});

}  // namespace pgas
