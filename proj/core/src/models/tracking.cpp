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

#include "pgas/models/tracking.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pgas {

namespace {

Eigen::MatrixXd scaled_factor(double dt, double theta) {
  Eigen::LLT<Eigen::MatrixXd> llt(cv_process_covariance(dt));
  return std::sqrt(theta) * Eigen::MatrixXd(llt.matrixL());
}

double gaussian_logpdf(double r, double sd) {
  const double z = r / sd;
  return -0.5 * (z * z + std::log(2.0 * std::numbers::pi)) - std::log(sd);
}

}  // namespace

void TrackingSpec::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("TrackingSpec: dt must be > 0");
  if (!(theta > 0.0)) throw std::invalid_argument("TrackingSpec: theta must be > 0");
  if (!(bearing_sd > 0.0 && elevation_sd > 0.0 && range_sd > 0.0)) {
    throw std::invalid_argument("TrackingSpec: observation noise must be > 0");
  }
  if (!(prior_shape > 0.0 && prior_scale > 0.0)) throw std::invalid_argument("TrackingSpec: invalid theta prior");
  if (initial_mean.size() != 6 || initial_sd.size() != 6) throw std::invalid_argument("TrackingSpec: initial shape");
  if ((initial_sd.array() <= 0.0).any()) throw std::invalid_argument("TrackingSpec: initial_sd must be > 0");
}

Eigen::MatrixXd cv_transition_matrix(double dt) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(6, 6);
  a.topRightCorner(3, 3) = dt * Eigen::MatrixXd::Identity(3, 3);
  return a;
}

Eigen::MatrixXd cv_process_covariance(double dt) {
  const Eigen::MatrixXd i3 = Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd q(6, 6);
  q << dt * dt * dt / 3.0 * i3, dt * dt / 2.0 * i3, dt * dt / 2.0 * i3, dt * i3;
  return q;
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

Eigen::Vector3d tracking_measurement(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double horizontal = std::hypot(x(0), x(1));
  return {std::atan2(x(1), x(0)), std::atan2(x(2), horizontal), std::hypot(horizontal, x(2))};
}

TrackingModel::TrackingModel(TrackingSpec spec)
    : spec_((spec.validate(), std::move(spec))),
      dynamics_(cv_transition_matrix(spec_.dt), scaled_factor(spec_.dt, spec_.theta)),
      initial_(initial_covariance()) {}

Eigen::MatrixXd TrackingModel::initial_covariance() const {
  return spec_.initial_sd.array().square().matrix().asDiagonal();
}

void TrackingModel::set_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw std::invalid_argument("set_theta: theta must be > 0");
  spec_.theta = theta;
  dynamics_ = LinearGaussianDynamics(cv_transition_matrix(spec_.dt), scaled_factor(spec_.dt, theta));
}

void TrackingModel::sample_initial(RandomSource& rng, MutableState out) const {
  initial_.sample(spec_.initial_mean, rng, as_vector(out));
}

double TrackingModel::log_initial(ConstState x) const { return initial_.log_density(spec_.initial_mean, as_vector(x)); }

void TrackingModel::sample_transition(std::size_t, ConstState prev, RandomSource& rng, MutableState out) const {
  dynamics_.step(as_vector(prev), rng, as_vector(out));
}

double TrackingModel::log_transition(std::size_t, ConstState prev, ConstState x) const {
  return dynamics_.log_transition(as_vector(prev), as_vector(x));
}

void TrackingModel::sample_observation(std::size_t, ConstState x, RandomSource& rng, MutableState y) const {
  const Eigen::Vector3d h = tracking_measurement(as_vector(x));
  y[0] = wrap_angle(h(0) + spec_.bearing_sd * rng.normal());
  y[1] = h(1) + spec_.elevation_sd * rng.normal();
  y[2] = h(2) + spec_.range_sd * rng.normal();
}

double TrackingModel::log_observation(std::size_t, ConstState x, ConstState y) const {
  const Eigen::Vector3d h = tracking_measurement(as_vector(x));
  return gaussian_logpdf(wrap_angle(y[0] - h(0)), spec_.bearing_sd) + gaussian_logpdf(y[1] - h(1), spec_.elevation_sd) +
         gaussian_logpdf(y[2] - h(2), spec_.range_sd);
}

std::pair<double, double> tracking_theta_posterior(const Trajectory& states, const TrackingSpec& spec) {
  if (states.dim() != 6) throw std::invalid_argument("tracking_theta_posterior: state dimension must be 6");
  const Eigen::MatrixXd a = cv_transition_matrix(spec.dt);
  Eigen::LLT<Eigen::MatrixXd> llt(cv_process_covariance(spec.dt));
  if (llt.info() != Eigen::Success) throw std::invalid_argument("tracking_theta_posterior: singular Q_cv");
  double quad = 0.0;
  for (std::size_t t = 1; t < states.length(); ++t) {
    const Eigen::VectorXd r = as_vector(states.at(t)) - a * as_vector(states.at(t - 1));
    quad += llt.matrixL().solve(r).squaredNorm();
  }
  const double steps = static_cast<double>(states.length() > 0 ? states.length() - 1 : 0);
  return {spec.prior_shape + 0.5 * steps * 6.0, spec.prior_scale + 0.5 * quad};
}

double tracking_theta_conditional(const Trajectory& states, const TrackingSpec& spec, RandomSource& rng) {
  const auto [shape, scale] = tracking_theta_posterior(states, spec);
  return 1.0 / rng.gamma(shape, 1.0 / scale);
}

}  // namespace pgas
