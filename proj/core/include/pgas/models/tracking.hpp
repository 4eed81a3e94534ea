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
#include <string>

#include "pgas/gaussian_bridge.hpp"
#include "pgas/target.hpp"

namespace pgas {

/// Near-constant-velocity target in 3D observed by a sensor at the origin.
/// State (p_x, p_y, p_z, v_x, v_y, v_z); transition covariance theta * Q_cv;
/// observation (bearing, elevation, range) with independent Gaussian noise.
struct TrackingSpec {
  double dt = 1.0;
  double theta = 0.01;
  double bearing_sd = 0.01;
  double elevation_sd = 0.01;
  double range_sd = 0.1;
  /// Inverse-gamma(shape, scale) prior on theta.
  double prior_shape = 1.0;
  double prior_scale = 1.0;
  Eigen::VectorXd initial_mean = (Eigen::VectorXd(6) << 50.0, 50.0, 10.0, 1.0, -0.5, 0.0).finished();
  Eigen::VectorXd initial_sd = (Eigen::VectorXd(6) << 1.0, 1.0, 1.0, 0.1, 0.1, 0.1).finished();

  void validate() const;
};

/// [[I, dt I], [0, I]].
Eigen::MatrixXd cv_transition_matrix(double dt);
/// Per axis [[dt^3/3, dt^2/2], [dt^2/2, dt]], laid out to match the state order.
Eigen::MatrixXd cv_process_covariance(double dt);

/// (bearing, elevation, range) of position p.
Eigen::Vector3d tracking_measurement(const Eigen::Ref<const Eigen::VectorXd>& x);

/// Angle wrapped to (-pi, pi].
double wrap_angle(double a);

class TrackingModel final : public StateSpaceModel {
 public:
  explicit TrackingModel(TrackingSpec spec);

  std::string name() const override { return "tracking"; }
  std::size_t state_dim() const override { return 6; }
  std::size_t obs_dim() const override { return 3; }

  void sample_initial(RandomSource& rng, MutableState out) const override;
  double log_initial(ConstState x) const override;
  void sample_transition(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const override;
  double log_transition(std::size_t t, ConstState prev, ConstState x) const override;
  void sample_observation(std::size_t t, ConstState x, RandomSource& rng, MutableState y) const override;
  double log_observation(std::size_t t, ConstState x, ConstState y) const override;

  const TrackingSpec& spec() const { return spec_; }
  double theta() const { return spec_.theta; }
  /// Rebuilds the transition for a new scale. Not safe while a sweep runs.
  void set_theta(double theta);
  const LinearGaussianDynamics& dynamics() const { return dynamics_; }
  Eigen::MatrixXd initial_covariance() const;

 private:
  TrackingSpec spec_;
  LinearGaussianDynamics dynamics_;
  CovarianceFactor initial_;
};

/// Exact draw of theta | X from the conjugate inverse-gamma posterior:
/// IG(a0 + (T-1) n / 2, b0 + sum_t r_t^T Q_cv^{-1} r_t / 2), r_t = x_t - A x_{t-1}.
double tracking_theta_conditional(const Trajectory& states, const TrackingSpec& spec, RandomSource& rng);

/// Shape and scale of the posterior used by tracking_theta_conditional.
std::pair<double, double> tracking_theta_posterior(const Trajectory& states, const TrackingSpec& spec);

}  // namespace pgas
