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

#include "pgas/random.hpp"

namespace pgas {

/// log(sum(exp(v))) with max-subtraction. Returns -inf when every entry is -inf.
double log_sum_exp(std::span<const double> log_values);

/// Normalised probabilities from natural-log weights (sum to 1 within 1e-12).
/// Throws AllWeightsDegenerate if every entry is -inf and std::invalid_argument
/// on NaN or +inf entries.
std::vector<double> normalize_log_weights(std::span<const double> log_weights);

/// Inverse-CDF draw with a single uniform; ties resolve to the lowest index and
/// zero-probability entries are never returned.
std::size_t categorical_draw(std::span<const double> probs, RandomSource& rng);

/// 1 / sum(p_i^2) of the normalised weights; lies in [1, N].
double effective_sample_size(std::span<const double> log_weights);

/// Repeated inverse-CDF draws from one set of log-weights. Same semantics as
/// categorical_draw, with the cumulative table built once.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(std::span<const double> log_weights);

  std::size_t draw(RandomSource& rng) const;
  std::size_t size() const { return cdf_.size(); }
  double probability(std::size_t i) const;

 private:
  std::vector<double> cdf_;
};

}  // namespace pgas
