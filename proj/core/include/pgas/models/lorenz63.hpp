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

#include <array>
#include <atomic>
#include <string>

#include "pgas/target.hpp"

namespace pgas {

/// Stochastic Lorenz '63 system observed through its first component:
///   d(Q, R, S) = (sigma (R - Q), Q (rho - S) - R, Q R - beta S) dt + diag(noise_sd) dW,
///   y_t ~ N(Q_t, obs_sd^2), observations dt apart, (Q, R, S)_0 ~ N(0, I).
struct Lorenz63Spec {
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  std::array<double, 3> noise_sd{2.23606797749979, 2.23606797749979, 2.23606797749979};
  double obs_sd = 1.0;
  double dt = 0.01;
  std::size_t substeps = 10;

  void validate() const;
};

std::array<double, 3> lorenz_drift(const Lorenz63Spec& spec, ConstState x);

/// `substeps` Euler-Maruyama steps of size dt / substeps. The diffusion is
/// constant, so this is also the Milstein scheme.
void lorenz_transition_sample(const Lorenz63Spec& spec, ConstState x, RandomSource& rng, MutableState out);

/// Simulator-only model: log_transition always throws IntractableTransition.
class Lorenz63Model final : public StateSpaceModel {
 public:
  explicit Lorenz63Model(Lorenz63Spec spec);

  std::string name() const override { return "lorenz63"; }
  std::size_t state_dim() const override { return 3; }
  std::size_t obs_dim() const override { return 1; }

  void sample_initial(RandomSource& rng, MutableState out) const override;
  double log_initial(ConstState x) const override;
  void sample_transition(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const override;
  bool has_transition_density() const override { return false; }
  double log_transition(std::size_t t, ConstState prev, ConstState x) const override;
  void sample_observation(std::size_t t, ConstState x, RandomSource& rng, MutableState y) const override;
  double log_observation(std::size_t t, ConstState x, ConstState y) const override;

  const Lorenz63Spec& spec() const { return spec_; }
  std::size_t density_calls() const { return density_calls_.load(); }

 private:
  Lorenz63Spec spec_;
  mutable std::atomic<std::size_t> density_calls_{0};
};

}  // namespace pgas
