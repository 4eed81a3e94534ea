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
#include <string>

#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"

namespace pgas {

/// Sequence of unnormalised log-densities gamma_t over growing state prefixes,
/// together with the proposal r_t used to extend them.
///
/// Targets are first-order Markov in their increments: log gamma_t(X_t) -
/// log gamma_{t-1}(X_{t-1}) depends on (x_{t-1}, x_t) only, and the proposal
/// conditions on x_{t-1} only. Every state-space model has this form. `prev` is
/// an empty span at t = 0.
class TargetSequence {
 public:
  virtual ~TargetSequence() = default;

  virtual std::size_t horizon() const = 0;
  virtual std::size_t state_dim() const = 0;

  virtual double log_gamma_increment(std::size_t t, ConstState prev, ConstState x) const = 0;
  virtual void propose(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const = 0;
  virtual double proposal_logpdf(std::size_t t, ConstState prev, ConstState x) const = 0;

  /// log W_t = log gamma_t - log gamma_{t-1} - log r_t. Overridden where the
  /// ratio cancels analytically.
  virtual double log_weight(std::size_t t, ConstState prev, ConstState x) const;

  /// False when increments for t >= 1 cannot be evaluated (simulator-only dynamics).
  virtual bool increment_tractable() const { return true; }
};

/// log gamma_t of a trajectory prefix: the sum of increments 0..t.
double log_gamma(const TargetSequence& target, const Trajectory& path, std::size_t t);

/// Checked weight function: rejects NaN states and NaN results.
double weight_function(const TargetSequence& target, std::size_t t, ConstState prev, ConstState x);

/// State-space model x_0 ~ mu, x_t ~ f(. | x_{t-1}), y_t ~ g(. | x_t).
class StateSpaceModel {
 public:
  virtual ~StateSpaceModel() = default;

  virtual std::string name() const = 0;
  virtual std::size_t state_dim() const = 0;
  virtual std::size_t obs_dim() const = 0;

  virtual void sample_initial(RandomSource& rng, MutableState out) const = 0;
  virtual double log_initial(ConstState x) const = 0;

  /// Draws x_t given x_{t-1}.
  virtual void sample_transition(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const = 0;
  virtual bool has_transition_density() const { return true; }
  /// log f(x_t | x_{t-1}); -inf off the support of a degenerate kernel. Throws
  /// IntractableTransition when has_transition_density() is false.
  virtual double log_transition(std::size_t t, ConstState prev, ConstState x) const = 0;

  virtual void sample_observation(std::size_t t, ConstState x, RandomSource& rng, MutableState y) const = 0;
  virtual double log_observation(std::size_t t, ConstState x, ConstState y) const = 0;
};

/// gamma_t(X_t) = p(X_t, Y_t) with the bootstrap proposal r_t = f. The weight
/// function is exactly log g(y_t | x_t). Holds references: the model and the
/// observations must outlive the target.
class SsmTarget final : public TargetSequence {
 public:
  SsmTarget(const StateSpaceModel& model, const Trajectory& observations);

  std::size_t horizon() const override { return observations_.length(); }
  std::size_t state_dim() const override { return model_.state_dim(); }

  double log_gamma_increment(std::size_t t, ConstState prev, ConstState x) const override;
  void propose(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const override;
  double proposal_logpdf(std::size_t t, ConstState prev, ConstState x) const override;
  double log_weight(std::size_t t, ConstState prev, ConstState x) const override;
  bool increment_tractable() const override { return model_.has_transition_density(); }

  const StateSpaceModel& model() const { return model_; }
  const Trajectory& observations() const { return observations_; }

 private:
  const StateSpaceModel& model_;
  const Trajectory& observations_;
};

}  // namespace pgas
