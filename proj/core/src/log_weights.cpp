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

#include "pgas/log_weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pgas/errors.hpp"

namespace pgas {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double checked_max(std::span<const double> log_weights) {
  if (log_weights.empty()) throw std::invalid_argument("empty weight vector");
  double max = kNegInf;
  for (double w : log_weights) {
    if (std::isnan(w)) throw std::invalid_argument("NaN log-weight");
    if (w == std::numeric_limits<double>::infinity()) throw std::invalid_argument("+inf log-weight");
    max = std::max(max, w);
  }
  return max;
}

// Index of the first cdf entry strictly greater than u; skips zero-mass slots.
std::size_t search_cdf(const std::vector<double>& cdf, double u) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) {
    // u landed on the rounding gap above the last increment.
    std::size_t i = cdf.size() - 1;
    while (i > 0 && cdf[i] == cdf[i - 1]) --i;
    return i;
  }
  return static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace

double log_sum_exp(std::span<const double> log_values) {
  const double max = checked_max(log_values);
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double w : log_values) sum += std::exp(w - max);
  return max + std::log(sum);
}

std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
  const double max = checked_max(log_weights);
  if (max == kNegInf) throw AllWeightsDegenerate("normalize_log_weights");
  std::vector<double> probs(log_weights.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = std::exp(log_weights[i] - max);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

std::size_t categorical_draw(std::span<const double> probs, RandomSource& rng) {
  if (probs.empty()) throw std::invalid_argument("empty probability vector");
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0)) throw std::invalid_argument("negative or NaN probability");
    acc += probs[i];
    cdf[i] = acc;
  }
  if (!(acc > 0.0)) throw AllWeightsDegenerate("categorical_draw");
  return search_cdf(cdf, rng.uniform() * acc);
}

double effective_sample_size(std::span<const double> log_weights) {
  const auto probs = normalize_log_weights(log_weights);
  double sum_sq = 0.0;
  for (double p : probs) sum_sq += p * p;
  return 1.0 / sum_sq;
}

CategoricalSampler::CategoricalSampler(std::span<const double> log_weights) {
  const double max = checked_max(log_weights);
  if (max == kNegInf) throw AllWeightsDegenerate("CategoricalSampler");
  cdf_.resize(log_weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    acc += std::exp(log_weights[i] - max);
    cdf_[i] = acc;
  }
}

std::size_t CategoricalSampler::draw(RandomSource& rng) const {
  return search_cdf(cdf_, rng.uniform() * cdf_.back());
}

double CategoricalSampler::probability(std::size_t i) const {
  const double lower = i == 0 ? 0.0 : cdf_[i - 1];
  return (cdf_[i] - lower) / cdf_.back();
}

}  // namespace pgas
