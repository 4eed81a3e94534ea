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

#include "pgas/extended_target.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pgas/log_weights.hpp"

namespace pgas {

double log_phi(const ParticleSystem& system, std::size_t k, const TargetSequence& target) {
  const std::size_t n = system.num_particles();
  const std::size_t horizon = system.horizon();
  if (k >= n) throw std::out_of_range("log_phi: k out of range");
  const TracedPath path = trace_ancestry(system, k);

  double total = log_gamma(target, path.trajectory, horizon - 1) - static_cast<double>(horizon) * std::log(n);
  if (total == -INFINITY) return total;

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = weight_function(target, 0, {}, system.state(0, i));
  for (std::size_t i = 0; i < n; ++i) {
    if (i != path.indexes[0]) total += target.proposal_logpdf(0, {}, system.state(0, i));
  }
  for (std::size_t t = 1; t < horizon && total != -INFINITY; ++t) {
    const double norm = log_sum_exp(w);
    if (norm == -INFINITY) return -INFINITY;
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = system.ancestor(t, i);
      const auto prev = system.state(t - 1, a);
      if (i != path.indexes[t]) total += w[a] - norm + target.proposal_logpdf(t, prev, system.state(t, i));
      next[i] = weight_function(target, t, prev, system.state(t, i));
    }
    w = std::move(next);
  }
  return std::isnan(total) ? -INFINITY : total;
}

}  // namespace pgas
