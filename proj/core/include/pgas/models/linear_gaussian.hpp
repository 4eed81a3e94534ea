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

#include <Eigen/Dense>
#include <atomic>
#include <string>

#include "pgas/kalman.hpp"
#include "pgas/target.hpp"

namespace pgas {

/// State-space model wrapper around an LgssmSpec. Exact oracles for it come
/// from kalman_smoother / ffbs_sample.
class LinearGaussianModel final : public StateSpaceModel {
 public:
  explicit LinearGaussianModel(LgssmSpec spec);

  std::string name() const override { return "lgssm"; }
  std::size_t state_dim() const override { return static_cast<std::size_t>(spec_.state_dim()); }
  std::size_t obs_dim() const override { return static_cast<std::size_t>(spec_.obs_dim()); }

  void sample_initial(RandomSource& rng, MutableState out) const override;
  double log_initial(ConstState x) const override;
  void sample_transition(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const override;
  double log_transition(std::size_t t, ConstState prev, ConstState x) const override;
  void sample_observation(std::size_t t, ConstState x, RandomSource& rng, MutableState y) const override;
  double log_observation(std::size_t t, ConstState x, ConstState y) const override;

  const LgssmSpec& spec() const { return spec_; }
  const LinearGaussianDynamics& dynamics() const { return spec_.dynamics; }

 private:
  LgssmSpec spec_;
  CovarianceFactor initial_;
  CovarianceFactor observation_noise_;
};

/// Hides the transition density of another model, turning it into a
/// simulator-only ("black-box") model. Counts attempted density evaluations.
class BlackBoxModel final : public StateSpaceModel {
 public:
  explicit BlackBoxModel(const StateSpaceModel& inner) : inner_(inner) {}

  std::string name() const override { return "blackbox(" + inner_.name() + ")"; }
  std::size_t state_dim() const override { return inner_.state_dim(); }
  std::size_t obs_dim() const override { return inner_.obs_dim(); }

  void sample_initial(RandomSource& rng, MutableState out) const override { inner_.sample_initial(rng, out); }
  double log_initial(ConstState x) const override { return inner_.log_initial(x); }
  void sample_transition(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const override {
    inner_.sample_transition(t, prev, rng, out);
  }
  bool has_transition_density() const override { return false; }
  double log_transition(std::size_t t, ConstState prev, ConstState x) const override;
  void sample_observation(std::size_t t, ConstState x, RandomSource& rng, MutableState y) const override {
    inner_.sample_observation(t, x, rng, y);
  }
  double log_observation(std::size_t t, ConstState x, ConstState y) const override {
    return inner_.log_observation(t, x, y);
  }

  std::size_t density_calls() const { return density_calls_.load(); }

 private:
  const StateSpaceModel& inner_;
  mutable std::atomic<std::size_t> density_calls_{0};
};

}  // namespace pgas
