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
#include <vector>

#include "pgas/gaussian_bridge.hpp"
#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"

namespace pgas {

/// Linear-Gaussian state-space model:
///   x_0 ~ N(m0, P0), x_{t+1} = A x_t + F v, y_t = H x_t + e, e ~ N(0, R).
struct LgssmSpec {
  LinearGaussianDynamics dynamics;
  Eigen::MatrixXd observation;      // H, p x n
  Eigen::MatrixXd observation_cov;  // R, p x p, positive definite
  Eigen::VectorXd initial_mean;
  Eigen::MatrixXd initial_cov;

  Eigen::Index state_dim() const { return dynamics.state_dim(); }
  Eigen::Index obs_dim() const { return observation.rows(); }
  /// Throws std::invalid_argument on inconsistent shapes or non-PD R.
  void validate() const;
};

/// Scalar model x' = a x + q v, y = x + r e, x_0 ~ N(m0, p0).
LgssmSpec scalar_lgssm(double a, double q, double r, double m0 = 0.0, double p0 = 1.0);

struct KalmanFilterResult {
  std::vector<Eigen::VectorXd> predicted_means;
  std::vector<Eigen::MatrixXd> predicted_covs;
  std::vector<Eigen::VectorXd> filtered_means;
  std::vector<Eigen::MatrixXd> filtered_covs;
  double log_likelihood = 0.0;
};

struct KalmanSmootherResult {
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covs;
  /// Cov(x_t, x_{t+1} | y_{0:T-1}), t = 0..T-2.
  std::vector<Eigen::MatrixXd> lag_one_covs;
  double log_likelihood = 0.0;
};

/// Standard covariance-form recursion with exact log-likelihood. Throws
/// NumericalRankFailure if an innovation covariance is not positive definite.
KalmanFilterResult kalman_filter(const LgssmSpec& spec, const Trajectory& observations);

/// Rauch-Tung-Striebel smoother on top of kalman_filter.
KalmanSmootherResult kalman_smoother(const LgssmSpec& spec, const Trajectory& observations);

/// Forward filtering, backward simulation: one exact draw from p(x_{0:T-1} | y).
Trajectory ffbs_sample(const LgssmSpec& spec, const Trajectory& observations, RandomSource& rng);

}  // namespace pgas
