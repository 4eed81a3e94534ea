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
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numbers>
#include <cstddef>
#include <vector>

#include "pgas/kalman.hpp"
#include "pgas/particle_system.hpp"

namespace pgas::testing {

/// Pearson chi-square goodness-of-fit p-value of observed counts against
/// expected probabilities. Cells with zero probability must have zero counts.
inline double chi_square_p_value(const std::vector<std::size_t>& counts, const std::vector<double>& probs) {
  double total = 0.0;
  for (std::size_t c : counts) total += static_cast<double>(c);
  double stat = 0.0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (probs[i] == 0.0) {
      if (counts[i] > 0) return 0.0;
      continue;
    }
    const double e = total * probs[i];
    stat += (static_cast<double>(counts[i]) - e) * (static_cast<double>(counts[i]) - e) / e;
    ++cells;
  }
  if (cells < 2) return 1.0;
  const boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Fixed observation sequence for scalar models.
inline Trajectory scalar_series(const std::vector<double>& values) {
  Trajectory y(values.size(), 1);
  for (std::size_t t = 0; t < values.size(); ++t) y(t, 0) = values[t];
  return y;
}

/// Posterior of the stacked states (x_0..x_{T-1}) of a linear-Gaussian
/// model by dense conditioning of the joint Gaussian of states and
/// observations, with the exact marginal log-likelihood.
struct DensePosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  double log_likelihood = 0.0;
};

inline DensePosterior dense_lgssm_posterior(const LgssmSpec& spec, const Trajectory& y) {
  const Eigen::Index n = spec.state_dim();
  const Eigen::Index p = spec.obs_dim();
  const auto horizon = static_cast<Eigen::Index>(y.length());
  const Eigen::MatrixXd& a = spec.dynamics.A();
  const Eigen::MatrixXd q = spec.dynamics.F() * spec.dynamics.F().transpose();

  Eigen::VectorXd mx(n * horizon);
  Eigen::MatrixXd sxx(n * horizon, n * horizon);
  std::vector<Eigen::MatrixXd> marg(static_cast<std::size_t>(horizon));
  Eigen::VectorXd m = spec.initial_mean;
  Eigen::MatrixXd c = spec.initial_cov;
  for (Eigen::Index t = 0; t < horizon; ++t) {
    if (t > 0) {
      m = a * m;
      c = a * c * a.transpose() + q;
    }
    mx.segment(t * n, n) = m;
    marg[static_cast<std::size_t>(t)] = c;
  }
  // Cov(x_s, x_t) = A^{t-s} Cov(x_s) for s <= t.
  for (Eigen::Index s = 0; s < horizon; ++s) {
    Eigen::MatrixXd block = marg[static_cast<std::size_t>(s)];
    for (Eigen::Index t = s; t < horizon; ++t) {
      sxx.block(t * n, s * n, n, n) = block;
      sxx.block(s * n, t * n, n, n) = block.transpose();
      block = a * block;
    }
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p * horizon, n * horizon);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(p * horizon, p * horizon);
  Eigen::VectorXd yv(p * horizon);
  for (Eigen::Index t = 0; t < horizon; ++t) {
    h.block(t * p, t * n, p, n) = spec.observation;
    r.block(t * p, t * p, p, p) = spec.observation_cov;
    for (Eigen::Index j = 0; j < p; ++j) yv(t * p + j) = y(static_cast<std::size_t>(t), static_cast<std::size_t>(j));
  }
  const Eigen::MatrixXd syy = h * sxx * h.transpose() + r;
  const Eigen::LLT<Eigen::MatrixXd> llt(syy);
  const Eigen::VectorXd resid = yv - h * mx;
  const Eigen::MatrixXd sxy = sxx * h.transpose();
  DensePosterior out;
  out.mean = mx + sxy * llt.solve(resid);
  out.cov = sxx - sxy * llt.solve(sxy.transpose());
  const Eigen::VectorXd white = llt.matrixL().solve(resid);
  const double log_det = 2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
  out.log_likelihood =
      -0.5 * (white.squaredNorm() + log_det + static_cast<double>(yv.size()) * std::log(2.0 * std::numbers::pi));
  return out;
}

}  // namespace pgas::testing
