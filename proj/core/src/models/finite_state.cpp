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

#include "pgas/models/finite_state.hpp"

#include <cmath>
#include <stdexcept>

#include "pgas/log_weights.hpp"

namespace pgas {

namespace {

void check_row(const std::vector<double>& row, std::size_t size, const char* what) {
  if (row.size() != size) throw std::invalid_argument(std::string("FiniteStateSpec: bad shape in ") + what);
  double total = 0.0;
  for (double p : row) {
    if (!(p >= 0.0)) throw std::invalid_argument(std::string("FiniteStateSpec: negative entry in ") + what);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument(std::string("FiniteStateSpec: row of ") + what);
}

double safe_log(double p) { return p > 0.0 ? std::log(p) : -INFINITY; }

}  // namespace

void FiniteStateSpec::validate() const {
  const std::size_t k = num_states();
  if (k == 0 || num_symbols() == 0) throw std::invalid_argument("FiniteStateSpec: empty");
  check_row(initial, k, "initial");
  if (transition.size() != k || emission.size() != k) throw std::invalid_argument("FiniteStateSpec: row count");
  for (const auto& row : transition) check_row(row, k, "transition");
  for (const auto& row : emission) check_row(row, num_symbols(), "emission");
}

FiniteStateSpec two_state_toy() {
  return FiniteStateSpec{{0.6, 0.4}, {{0.8, 0.2}, {0.3, 0.7}}, {{0.75, 0.25}, {0.35, 0.65}}};
}

FiniteStateModel::FiniteStateModel(FiniteStateSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

std::size_t FiniteStateModel::label(double v, std::size_t bound) const {
  const double r = std::round(v);
  if (r != v || r < 0.0 || r >= static_cast<double>(bound)) throw std::invalid_argument("FiniteStateModel: bad label");
  return static_cast<std::size_t>(r);
}

void FiniteStateModel::sample_initial(RandomSource& rng, MutableState out) const {
  out[0] = static_cast<double>(categorical_draw(spec_.initial, rng));
}

double FiniteStateModel::log_initial(ConstState x) const {
  return safe_log(spec_.initial[label(x[0], spec_.num_states())]);
}

void FiniteStateModel::sample_transition(std::size_t, ConstState prev, RandomSource& rng, MutableState out) const {
  out[0] = static_cast<double>(categorical_draw(spec_.transition[label(prev[0], spec_.num_states())], rng));
}

double FiniteStateModel::log_transition(std::size_t, ConstState prev, ConstState x) const {
  const std::size_t k = spec_.num_states();
  return safe_log(spec_.transition[label(prev[0], k)][label(x[0], k)]);
}

void FiniteStateModel::sample_observation(std::size_t, ConstState x, RandomSource& rng, MutableState y) const {
  y[0] = static_cast<double>(categorical_draw(spec_.emission[label(x[0], spec_.num_states())], rng));
}

double FiniteStateModel::log_observation(std::size_t, ConstState x, ConstState y) const {
  return safe_log(spec_.emission[label(x[0], spec_.num_states())][label(y[0], spec_.num_symbols())]);
}

std::vector<double> enumerate_smoothing(const FiniteStateModel& model, const Trajectory& observations) {
  const SsmTarget target(model, observations);
  const std::size_t k = model.spec().num_states();
  const std::size_t horizon = observations.length();
  std::size_t count = 1;
  for (std::size_t t = 0; t < horizon; ++t) count *= k;
  std::vector<double> log_p(count);
  Trajectory path(horizon, 1);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (std::size_t t = horizon; t-- > 0;) {
      path(t, 0) = static_cast<double>(rest % k);
      rest /= k;
    }
    log_p[idx] = log_gamma(target, path, horizon - 1);
  }
  return normalize_log_weights(log_p);
}

std::size_t path_index(const Trajectory& path, std::size_t num_states) {
  std::size_t idx = 0;
  for (std::size_t t = 0; t < path.length(); ++t) idx = idx * num_states + static_cast<std::size_t>(path(t, 0));
  return idx;
}

}  // namespace pgas
