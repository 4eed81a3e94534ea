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

#include "pgas/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "pgas/errors.hpp"
#include "pgas/log_weights.hpp"

namespace pgas {

namespace {

void copy_state(ConstState from, MutableState to) { std::copy(from.begin(), from.end(), to.begin()); }

ParticleSystem& prepare(std::optional<ParticleSystem>& local, const SweepOptions& options, std::size_t n,
                        std::size_t horizon, std::size_t dim) {
  if (options.workspace && options.workspace->num_particles() == n && options.workspace->horizon() == horizon &&
      options.workspace->dim() == dim) {
    return *options.workspace;
  }
  if (options.workspace) {
    *options.workspace = ParticleSystem(n, horizon, dim);
    return *options.workspace;
  }
  local.emplace(n, horizon, dim);
  return *local;
}

class PgUpdate final : public ReferenceUpdate {
 public:
  std::size_t ancestor(const ParticleSystem& system, std::size_t, const TargetSequence&, Trajectory&, RandomSource&,
                       bool&) override {
    return system.num_particles() - 1;
  }
};

class PgasUpdate final : public ReferenceUpdate {
 public:
  std::size_t ancestor(const ParticleSystem& system, std::size_t t, const TargetSequence& target,
                       Trajectory& reference, RandomSource& rng, bool&) override {
    const auto log_w = ancestor_sampling_logweights(system, t, reference, target);
    return categorical_draw(normalize_log_weights(log_w), rng);
  }
};

class RejuvenationUpdate final : public ReferenceUpdate {
 public:
  RejuvenationUpdate(const RejuvenationPlan& plan, const RejuvenationKernel& kernel) : plan_(plan), kernel_(kernel) {}

  bool initial(const TargetSequence& target, Trajectory& reference, std::size_t num_particles,
               RandomSource& rng) override {
    const RejuvenationContext ctx(target, reference, 0, plan_.last(0), nullptr, num_particles);
    KernelState state{0, ctx.current_window()};
    const bool moved = kernel_.step(ctx, state, rng);
    if (moved) splice(reference, 0, state.window);
    return moved;
  }

  std::size_t ancestor(const ParticleSystem& system, std::size_t t, const TargetSequence& target,
                       Trajectory& reference, RandomSource& rng, bool& moved) override {
    const RejuvenationContext ctx(target, reference, t, plan_.last(t), &system, system.num_particles());
    KernelState state{system.num_particles() - 1, ctx.current_window()};
    moved = kernel_.step(ctx, state, rng);
    if (moved) splice(reference, t, state.window);
    return state.ancestor;
  }

 private:
  static void splice(Trajectory& reference, std::size_t t, const Trajectory& window) {
    for (std::size_t j = 0; j < window.length(); ++j) copy_state(window.at(j), reference.at(t + j));
  }

  const RejuvenationPlan& plan_;
  const RejuvenationKernel& kernel_;
};

void run_smc(ParticleSystem& system, const TargetSequence& target, RandomSource& rng, WeightMonitor* monitor) {
  smc_initialize(system, target, std::nullopt, rng, monitor);
  for (std::size_t t = 1; t < system.horizon(); ++t) smc_step(system, t, target, std::nullopt, rng, monitor);
}

Trajectory final_draw(const ParticleSystem& system, RandomSource& rng) {
  const CategoricalSampler sampler(system.log_weights(system.horizon() - 1));
  return trace_ancestry(system, sampler.draw(rng)).trajectory;
}

}  // namespace

std::vector<double> ancestor_sampling_logweights(const ParticleSystem& system, std::size_t t,
                                                 const Trajectory& reference, const TargetSequence& target) {
  if (!target.increment_tractable()) throw IntractableTransition("ancestor sampling target");
  if (t == 0 || t >= system.horizon()) throw std::out_of_range("ancestor_sampling_logweights: bad time index");
  const std::size_t n = system.num_particles();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = system.log_weight(t - 1, i);
    if (w == -INFINITY) {
      out[i] = w;
      continue;
    }
    const double inc = target.log_gamma_increment(t, system.state(t - 1, i), reference.at(t));
    out[i] = std::isnan(inc) ? -INFINITY : w + inc;
  }
  return out;
}

SweepRecord conditional_smc_sweep(const Trajectory& reference, const TargetSequence& target,
                                  std::size_t num_particles, ReferenceUpdate& update, RandomSource& rng,
                                  const SweepOptions& options) {
  if (num_particles < 2) throw std::invalid_argument("conditional SMC needs at least 2 particles");
  const std::size_t horizon = target.horizon();
  if (reference.length() != horizon || reference.dim() != target.state_dim()) {
    throw std::invalid_argument("reference trajectory does not match the target");
  }
  RandomSource ref_rng = rng.split();
  std::optional<ParticleSystem> local;
  ParticleSystem& system = prepare(local, options, num_particles, horizon, target.state_dim());
  const std::size_t r = num_particles - 1;

  SweepRecord record;
  record.reference = reference;
  record.ancestor_changed.assign(horizon, 0);
  record.kernel_moved.assign(horizon, 0);
  Trajectory& ref = record.reference;

  record.kernel_moved[0] = update.initial(target, ref, num_particles, ref_rng);
  smc_initialize(system, target, r, rng, options.monitor);
  copy_state(ref.at(0), system.state(0, r));
  system.ancestor(0, r) = r;
  system.log_weight(0, r) = weight_function(target, 0, {}, ref.at(0));
  if (options.monitor) options.monitor->observe(system.log_weight(0, r));

  for (std::size_t t = 1; t < horizon; ++t) {
    smc_step(system, t, target, r, rng, options.monitor);
    bool moved = false;
    const std::size_t a = update.ancestor(system, t, target, ref, ref_rng, moved);
    if (a >= num_particles) throw std::out_of_range("reference ancestor out of range");
    system.ancestor(t, r) = a;
    copy_state(ref.at(t), system.state(t, r));
    const double w = weight_function(target, t, system.state(t - 1, a), ref.at(t));
    system.log_weight(t, r) = w;
    if (options.monitor) options.monitor->observe(w);
    record.ancestor_changed[t] = a != r;
    record.kernel_moved[t] = moved;
  }
  record.trajectory = final_draw(system, rng);
  return record;
}

SweepRecord pg_sweep(const Trajectory& reference, const TargetSequence& target, std::size_t num_particles,
                     RandomSource& rng, const SweepOptions& options) {
  PgUpdate update;
  return conditional_smc_sweep(reference, target, num_particles, update, rng, options);
}

SweepRecord pgas_sweep(const Trajectory& reference, const TargetSequence& target, std::size_t num_particles,
                       RandomSource& rng, const SweepOptions& options) {
  PgasUpdate update;
  return conditional_smc_sweep(reference, target, num_particles, update, rng, options);
}

SweepRecord pgas_rejuvenated_sweep(const Trajectory& reference, const TargetSequence& target,
                                   std::size_t num_particles, const RejuvenationPlan& plan,
                                   const RejuvenationKernel& kernel, RandomSource& rng, const SweepOptions& options) {
  if (plan.horizon() != target.horizon()) throw PlanOutOfRange("plan horizon differs from the target horizon");
  RejuvenationUpdate update(plan, kernel);
  return conditional_smc_sweep(reference, target, num_particles, update, rng, options);
}

SmcDraw smc_draw(const TargetSequence& target, std::size_t num_particles, RandomSource& rng,
                 const SweepOptions& options) {
  if (num_particles < 1) throw std::invalid_argument("SMC needs at least 1 particle");
  std::optional<ParticleSystem> local;
  ParticleSystem& system = prepare(local, options, num_particles, target.horizon(), target.state_dim());
  run_smc(system, target, rng, options.monitor);
  SmcDraw out;
  out.log_likelihood = log_likelihood_estimate(system);
  out.trajectory = final_draw(system, rng);
  return out;
}

PimhState pimh_initialize(const TargetSequence& target, std::size_t num_particles, RandomSource& rng,
                          std::size_t max_attempts) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    try {
      SmcDraw draw = smc_draw(target, num_particles, rng);
      return PimhState{std::move(draw.trajectory), draw.log_likelihood};
    } catch (const AllWeightsDegenerate&) {
    }
  }
  throw AllWeightsDegenerate("pimh_initialize");
}

bool pimh_sweep(PimhState& state, const TargetSequence& target, std::size_t num_particles, RandomSource& rng,
                const SweepOptions& options) {
  std::optional<SmcDraw> proposal;
  try {
    proposal = smc_draw(target, num_particles, rng, options);
  } catch (const AllWeightsDegenerate&) {
    return false;
  }
  const double log_ratio = proposal->log_likelihood - state.log_likelihood;
  const double u = rng.uniform();
  if (!(log_ratio >= 0.0 || std::log(u) < log_ratio)) return false;
  state.trajectory = std::move(proposal->trajectory);
  state.log_likelihood = proposal->log_likelihood;
  return true;
}

}  // namespace pgas
