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

#include <memory>
#include <string>

#include <Eigen/Dense>
#include <pgas/gaussian_bridge.hpp>
#include <pgas/models/autoregressive.hpp>
#include <pgas/models/finite_state.hpp>
#include <pgas/models/linear_gaussian.hpp>
#include <pgas/models/lorenz63.hpp>
#include <pgas/models/tracking.hpp>

#include "pgas_cli/config.hpp"

namespace pgas::cli {

/// A model built from a config block, plus the linear-Gaussian structure the
/// bridge proposal needs when the model has one.
///
/// Parameters per model (all optional, defaults in brackets):
///   lgssm     a [0.9], q [1], r [1], m0 [0], p0 [1]
///   ar        alpha [0.9,-0.8,0.7,-0.6,0.5], sigma_v [1], beta [0.5], sigma_e [0.5], nu [3]
///   tracking  dt [1], theta [0.01], bearing_sd [0.01], elevation_sd [0.01], range_sd [0.1],
///             prior_shape [1], prior_scale [1], initial_mean [6], initial_sd [6]
///   lorenz63  sigma [10], rho [28], beta [8/3], noise_sd [sqrt 5, scalar or 3], obs_sd [1],
///             dt [0.01], substeps [10]
///   finite    initial, transition, emission [two-state toy]
/// lgssm, ar and tracking also accept black_box [false], which hides the
/// transition density.
class ModelBundle {
 public:
  explicit ModelBundle(const ModelConfig& config);

  const StateSpaceModel& model() const { return black_box_ ? *black_box_ : *base_; }
  const std::string& name() const { return name_; }

  bool has_linear_dynamics() const { return lgssm_ || ar_ || tracking_; }
  /// Throws ValidationError when has_linear_dynamics() is false.
  const LinearGaussianDynamics& dynamics() const;
  Eigen::VectorXd initial_mean() const;
  Eigen::MatrixXd initial_covariance() const;

  /// Non-null for the tracking model only.
  TrackingModel* tracking() const { return tracking_; }

 private:
  std::string name_;
  std::unique_ptr<StateSpaceModel> base_;
  std::unique_ptr<BlackBoxModel> black_box_;
  LinearGaussianModel* lgssm_ = nullptr;
  ArModel* ar_ = nullptr;
  TrackingModel* tracking_ = nullptr;
};

}  // namespace pgas::cli
