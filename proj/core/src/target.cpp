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

#include "pgas/target.hpp"

#include <cmath>
#include <stdexcept>

namespace pgas {

double TargetSequence::log_weight(std::size_t t, ConstState prev, ConstState x) const {
  const double num = log_gamma_increment(t, prev, x);
  if (num == -INFINITY) return -INFINITY;
  return num - proposal_logpdf(t, prev, x);
}

double log_gamma(const TargetSequence& target, const Trajectory& path, std::size_t t) {
  if (t >= path.length()) throw std::out_of_range("log_gamma: prefix longer than path");
  double total = target.log_gamma_increment(0, {}, path.at(0));
  for (std::size_t s = 1; s <= t && total != -INFINITY; ++s) {
    total += target.log_gamma_increment(s, path.at(s - 1), path.at(s));
  }
  return total;
}

double weight_function(const TargetSequence& target, std::size_t t, ConstState prev, ConstState x) {
  for (double v : x) {
    if (std::isnan(v)) throw std::invalid_argument("weight_function: NaN state");
  }
  for (double v : prev) {
    if (std::isnan(v)) throw std::invalid_argument("weight_function: NaN state");
  }
  const double w = target.log_weight(t, prev, x);
  if (std::isnan(w)) throw std::invalid_argument("weight_function: NaN weight at t=" + std::to_string(t));
  return w;
}

SsmTarget::SsmTarget(const StateSpaceModel& model, const Trajectory& observations)
    : model_(model), observations_(observations) {
  if (observations.length() == 0) throw std::invalid_argument("SsmTarget: no observations");
  if (observations.dim() != model.obs_dim()) throw std::invalid_argument("SsmTarget: observation dimension mismatch");
}

double SsmTarget::log_gamma_increment(std::size_t t, ConstState prev, ConstState x) const {
  const double prior = t == 0 ? model_.log_initial(x) : model_.log_transition(t, prev, x);
  if (prior == -INFINITY) return prior;
  return prior + model_.log_observation(t, x, observations_.at(t));
}

void SsmTarget::propose(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const {
  if (t == 0) {
    model_.sample_initial(rng, out);
  } else {
    model_.sample_transition(t, prev, rng, out);
  }
}

double SsmTarget::proposal_logpdf(std::size_t t, ConstState prev, ConstState x) const {
  return t == 0 ? model_.log_initial(x) : model_.log_transition(t, prev, x);
}

double SsmTarget::log_weight(std::size_t t, ConstState, ConstState x) const {
  return model_.log_observation(t, x, observations_.at(t));
}

}  // namespace pgas
