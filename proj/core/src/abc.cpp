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

#include "pgas/abc.hpp"

#include <stdexcept>

#include "pgas/log_weights.hpp"

namespace pgas {

void AbcKernel::validate(std::size_t dim) const {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("AbcKernel: epsilon must be >= 0");
  if (!scale.empty() && scale.size() != dim) throw std::invalid_argument("AbcKernel: scale has wrong dimension");
  for (double s : scale) {
    if (!(s > 0.0)) throw std::invalid_argument("AbcKernel: scale entries must be > 0");
  }
}

double abc_kernel_logeval(const AbcKernel& kernel, ConstState x, ConstState x_ref) {
  if (!(kernel.epsilon > 0.0)) throw std::invalid_argument("abc_kernel_logeval: epsilon must be > 0");
  if (x.size() != x_ref.size()) throw std::invalid_argument("abc_kernel_logeval: dimension mismatch");
  double sq = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d = x[j] - x_ref[j];
    if (!kernel.scale.empty()) d /= kernel.scale[j];
    sq += d * d;
  }
  return -sq / (2.0 * kernel.epsilon);
}

std::size_t abc_ancestor_step(const ParticleSystem& system, std::size_t t, ConstState x_ref,
                              const StateSpaceModel& model, const AbcKernel& kernel, RandomSource& rng) {
  const std::size_t n = system.num_particles();
  if (n < 2) throw std::invalid_argument("abc_ancestor_step: needs at least 2 particles");
  if (t == 0 || t >= system.horizon()) throw std::out_of_range("abc_ancestor_step: bad time index");
  const std::size_t r = n - 1;
  if (kernel.epsilon == 0.0) return r;

  const CategoricalSampler resampler(system.log_weights(t - 1));
  std::vector<std::size_t> candidates(n - 1);
  std::vector<double> log_w(n);
  std::vector<double> simulated(system.dim());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    candidates[i] = resampler.draw(rng);
    model.sample_transition(t, system.state(t - 1, candidates[i]), rng, simulated);
    log_w[i] = abc_kernel_logeval(kernel, simulated, x_ref);
  }
  log_w[r] = 0.0;
  const std::size_t pick = categorical_draw(normalize_log_weights(log_w), rng);
  return pick == r ? r : candidates[pick];
}

namespace {

class AbcUpdate final : public ReferenceUpdate {
 public:
  AbcUpdate(const StateSpaceModel& model, const AbcKernel& kernel) : model_(model), kernel_(kernel) {}

  std::size_t ancestor(const ParticleSystem& system, std::size_t t, const TargetSequence&, Trajectory& reference,
                       RandomSource& rng, bool&) override {
    return abc_ancestor_step(system, t, reference.at(t), model_, kernel_, rng);
  }

 private:
  const StateSpaceModel& model_;
  const AbcKernel& kernel_;
};

}  // namespace

SweepRecord pgas_abc_sweep(const Trajectory& reference, const SsmTarget& target, std::size_t num_particles,
                           const AbcKernel& kernel, RandomSource& rng, const SweepOptions& options) {
  kernel.validate(target.state_dim());
  AbcUpdate update(target.model(), kernel);
  return conditional_smc_sweep(reference, target, num_particles, update, rng, options);
}

}  // namespace pgas
