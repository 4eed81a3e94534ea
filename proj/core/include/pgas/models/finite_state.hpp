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

#include <string>
#include <vector>

#include "pgas/target.hpp"

namespace pgas {

/// Hidden Markov model on states {0, ..., K-1} with discrete observations
/// {0, ..., M-1}. States and observations are stored as doubles holding the
/// integer label. Zero probabilities are allowed everywhere.
struct FiniteStateSpec {
  std::vector<double> initial;                  // K
  std::vector<std::vector<double>> transition;  // K x K, rows sum to 1
  std::vector<std::vector<double>> emission;    // K x M, rows sum to 1

  std::size_t num_states() const { return initial.size(); }
  std::size_t num_symbols() const { return emission.empty() ? 0 : emission.front().size(); }
  void validate() const;
};

/// Two-state toy used by the enumeration tests.
FiniteStateSpec two_state_toy();

class FiniteStateModel final : public StateSpaceModel {
 public:
  explicit FiniteStateModel(FiniteStateSpec spec);

  std::string name() const override { return "finite"; }
  std::size_t state_dim() const override { return 1; }
  std::size_t obs_dim() const override { return 1; }

  void sample_initial(RandomSource& rng, MutableState out) const override;
  double log_initial(ConstState x) const override;
  void sample_transition(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const override;
  double log_transition(std::size_t t, ConstState prev, ConstState x) const override;
  void sample_observation(std::size_t t, ConstState x, RandomSource& rng, MutableState y) const override;
  double log_observation(std::size_t t, ConstState x, ConstState y) const override;

  const FiniteStateSpec& spec() const { return spec_; }

 private:
  std::size_t label(double v, std::size_t bound) const;

  FiniteStateSpec spec_;
};

/// Exact p(x_{0:T-1} | y) for every one of the K^T paths, in lexicographic order
/// of (x_0, ..., x_{T-1}) with x_{T-1} varying fastest.
std::vector<double> enumerate_smoothing(const FiniteStateModel& model, const Trajectory& observations);

/// Lexicographic index of a path of labels (inverse of enumerate_smoothing's order).
std::size_t path_index(const Trajectory& path, std::size_t num_states);

}  // namespace pgas
