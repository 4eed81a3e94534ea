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
#include <span>
#include <vector>

namespace pgas {

using ConstState = std::span<const double>;
using MutableState = std::span<double>;

/// A state sequence x_0..x_{T-1}, each of dimension `dim`, stored row-major.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::size_t length, std::size_t dim) : length_(length), dim_(dim), data_(length * dim, 0.0) {}

  std::size_t length() const { return length_; }
  std::size_t dim() const { return dim_; }

  ConstState at(std::size_t t) const { return {data_.data() + t * dim_, dim_}; }
  MutableState at(std::size_t t) { return {data_.data() + t * dim_, dim_}; }
  double operator()(std::size_t t, std::size_t j) const { return data_[t * dim_ + j]; }
  double& operator()(std::size_t t, std::size_t j) { return data_[t * dim_ + j]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::size_t length_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Full N x T particle storage with genealogy. Ancestor indexes are 0-based;
/// column 0 has no ancestors. Nothing is pruned: ancestor sampling needs the
/// complete history.
class ParticleSystem {
 public:
  ParticleSystem(std::size_t num_particles, std::size_t horizon, std::size_t dim);

  std::size_t num_particles() const { return n_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t dim() const { return dim_; }

  ConstState state(std::size_t t, std::size_t i) const { return {states_.data() + (t * n_ + i) * dim_, dim_}; }
  MutableState state(std::size_t t, std::size_t i) { return {states_.data() + (t * n_ + i) * dim_, dim_}; }

  /// All N states of column t, particle-major.
  std::span<const double> column(std::size_t t) const { return {states_.data() + t * n_ * dim_, n_ * dim_}; }

  std::span<const double> log_weights(std::size_t t) const { return {log_weights_.data() + t * n_, n_}; }
  std::span<double> log_weights(std::size_t t) { return {log_weights_.data() + t * n_, n_}; }
  double log_weight(std::size_t t, std::size_t i) const { return log_weights_[t * n_ + i]; }
  double& log_weight(std::size_t t, std::size_t i) { return log_weights_[t * n_ + i]; }

  std::size_t ancestor(std::size_t t, std::size_t i) const { return ancestors_[t * n_ + i]; }
  std::size_t& ancestor(std::size_t t, std::size_t i) { return ancestors_[t * n_ + i]; }

 private:
  std::size_t n_;
  std::size_t horizon_;
  std::size_t dim_;
  std::vector<double> states_;
  std::vector<double> log_weights_;
  std::vector<std::size_t> ancestors_;
};

/// Trajectory of particle k at the final time, and its index path b_0..b_{T-1}.
struct TracedPath {
  Trajectory trajectory;
  std::vector<std::size_t> indexes;
};

/// Follows b_{T-1} = k, b_t = a_{t+1}^{b_{t+1}} back to t = 0.
TracedPath trace_ancestry(const ParticleSystem& system, std::size_t k);

}  // namespace pgas
