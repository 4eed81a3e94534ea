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
#include <vector>

#include "pgas/gaussian_bridge.hpp"
#include "pgas/target.hpp"

namespace pgas {

/// Order-n autoregression in companion form with a saturated, Student-t
/// observation of the first component:
///   x_{t+1} = A x_t + F v,  A = companion(alpha),  F = sigma_v e_1,
///   y_t = tanh(beta x_{1,t}) / beta + sigma_e e_t,  e_t ~ t_nu.
/// F F^T has rank 1, so the transition is degenerate for n > 1.
struct ArSsmSpec {
  std::vector<double> alpha{0.9, -0.8, 0.7, -0.6, 0.5};
  double sigma_v = 1.0;
  double beta = 0.5;
  double sigma_e = 0.5;
  double nu = 3.0;

  std::size_t order() const { return alpha.size(); }
  void validate() const;
};

LinearGaussianDynamics ar_dynamics(const ArSsmSpec& spec);

/// Solution P of P = A P A^T + Q by doubling; A must be stable.
Eigen::MatrixXd stationary_covariance(const LinearGaussianDynamics& dyn);

/// log of the Student-t_nu density of (y - tanh(beta x_1)/beta) / sigma_e, minus log sigma_e.
double ar_observation_logdensity(const ArSsmSpec& spec, double y, double x1);

/// log density of a standard Student-t with nu degrees of freedom.
double student_t_logpdf(double z, double nu);

/// The initial state is drawn from the stationary law N(0, P_inf).
class ArModel final : public StateSpaceModel {
 public:
  explicit ArModel(ArSsmSpec spec);

  std::string name() const override { return "ar"; }
  std::size_t state_dim() const override { return spec_.order(); }
  std::size_t obs_dim() const override { return 1; }

  void sample_initial(RandomSource& rng, MutableState out) const override;
  double log_initial(ConstState x) const override;
  void sample_transition(std::size_t t, ConstState prev, RandomSource& rng, MutableState out) const override;
  double log_transition(std::size_t t, ConstState prev, ConstState x) const override;
  void sample_observation(std::size_t t, ConstState x, RandomSource& rng, MutableState y) const override;
  double log_observation(std::size_t t, ConstState x, ConstState y) const override;

  const ArSsmSpec& spec() const { return spec_; }
  const LinearGaussianDynamics& dynamics() const { return dynamics_; }
  const Eigen::MatrixXd& initial_covariance() const { return initial_.covariance(); }

 private:
  ArSsmSpec spec_;
  LinearGaussianDynamics dynamics_;
  CovarianceFactor initial_;
  double t_log_norm_;
};

}  // namespace pgas
