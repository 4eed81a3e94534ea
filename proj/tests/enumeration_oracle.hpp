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

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "pgas/models/finite_state.hpp"
#include "pgas/particle_system.hpp"

namespace pgas::testing {

/// One configuration of the extended space of a bootstrap particle filter on
/// a finite-state model: states x[t][i], ancestors a[t][i] (t >= 1) and the
/// final index k.
struct ExtendedConfig {
  std::vector<std::vector<std::size_t>> x;
  std::vector<std::vector<std::size_t>> a;
  std::size_t k = 0;

  std::vector<std::size_t> lineage() const {
    std::vector<std::size_t> b(x.size());
    b.back() = k;
    for (std::size_t t = x.size() - 1; t > 0; --t) b[t - 1] = a[t][b[t]];
    return b;
  }
};

/// Extended target density written out from raw model probabilities:
///   p(x^k_{0:T-1}, y) / N^T * prod_{i != b_0} mu(x_0^i)
///     * prod_{t >= 1} prod_{i != b_t} wbar_{t-1}^{a_t^i} f(x_t^i | x_{t-1}^{a_t^i}),
/// with bootstrap weights w_t^i = g(y_t | x_t^i).
inline double extended_density(const FiniteStateSpec& spec, const std::vector<std::size_t>& y,
                               const ExtendedConfig& c) {
  const std::size_t horizon = c.x.size();
  const std::size_t n = c.x.front().size();
  const auto b = c.lineage();
  double phi = spec.initial[c.x[0][b[0]]] * spec.emission[c.x[0][b[0]]][y[0]];
  for (std::size_t t = 1; t < horizon; ++t) {
    phi *= spec.transition[c.x[t - 1][b[t - 1]]][c.x[t][b[t]]] * spec.emission[c.x[t][b[t]]][y[t]];
  }
  phi /= std::pow(static_cast<double>(n), static_cast<double>(horizon));
  for (std::size_t i = 0; i < n; ++i) {
    if (i != b[0]) phi *= spec.initial[c.x[0][i]];
  }
  for (std::size_t t = 1; t < horizon; ++t) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += spec.emission[c.x[t - 1][i]][y[t - 1]];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == b[t]) continue;
      const std::size_t anc = c.a[t][i];
      phi *= spec.emission[c.x[t - 1][anc]][y[t - 1]] / total * spec.transition[c.x[t - 1][anc]][c.x[t][i]];
    }
  }
  return phi;
}

/// Calls `visit` on every configuration with N particles, horizon T and K states.
inline void for_each_config(std::size_t n, std::size_t horizon, std::size_t states,
                            const std::function<void(const ExtendedConfig&)>& visit) {
  ExtendedConfig c;
  c.x.assign(horizon, std::vector<std::size_t>(n, 0));
  c.a.assign(horizon, std::vector<std::size_t>(n, 0));
  // Odometer over x digits, then a digits (t >= 1), then k.
  std::vector<std::pair<std::size_t*, std::size_t>> digits;
  for (auto& row : c.x) {
    for (auto& v : row) digits.emplace_back(&v, states);
  }
  for (std::size_t t = 1; t < horizon; ++t) {
    for (auto& v : c.a[t]) digits.emplace_back(&v, n);
  }
  digits.emplace_back(&c.k, n);
  while (true) {
    visit(c);
    std::size_t d = 0;
    while (d < digits.size()) {
      if (++*digits[d].first < digits[d].second) break;
      *digits[d].first = 0;
      ++d;
    }
    if (d == digits.size()) return;
  }
}

/// Normalised sums of the extended density over configurations that pass
/// `keep`, binned by `key`.
inline std::map<std::vector<std::size_t>, double> conditional_by_enumeration(
    const FiniteStateSpec& spec, const std::vector<std::size_t>& y, std::size_t n,
    const std::function<bool(const ExtendedConfig&)>& keep,
    const std::function<std::vector<std::size_t>(const ExtendedConfig&)>& key) {
  std::map<std::vector<std::size_t>, double> bins;
  double total = 0.0;
  for_each_config(n, y.size(), spec.num_states(), [&](const ExtendedConfig& c) {
    if (!keep(c)) return;
    const double p = extended_density(spec, y, c);
    bins[key(c)] += p;
    total += p;
  });
  for (auto& [k, v] : bins) v /= total;
  return bins;
}

inline ParticleSystem to_particle_system(const ExtendedConfig& c) {
  const std::size_t horizon = c.x.size();
  const std::size_t n = c.x.front().size();
  ParticleSystem system(n, horizon, 1);
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      system.state(t, i)[0] = static_cast<double>(c.x[t][i]);
      system.ancestor(t, i) = t == 0 ? i : c.a[t][i];
    }
  }
  return system;
}

}  // namespace pgas::testing
