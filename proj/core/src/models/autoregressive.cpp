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

#include "pgas/models/autoregressive.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pgas {

void ArSsmSpec::validate() const {
  if (alpha.empty()) throw std::invalid_argument("ArSsmSpec: empty alpha");
  if (!(sigma_v > 0.0)) throw std::invalid_argument("ArSsmSpec: sigma_v must be > 0");
  if (!(sigma_e > 0.0)) throw std::invalid_argument("ArSsmSpec: sigma_e must be > 0");
  if (!(nu > 0.0)) throw std::invalid_argument("ArSsmSpec: nu must be > 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("ArSsmSpec: beta must be >= 0");
}

LinearGaussianDynamics ar_dynamics(const ArSsmSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) a(0, j) = spec.alpha[static_cast<std::size_t>(j)];
  for (Eigen::Index j = 1; j < n; ++j) a(j, j - 1) = 1.0;
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, 1);
  f(0, 0) = spec.sigma_v;
  return LinearGaussianDynamics(std::move(a), std::move(f));
}

Eigen::MatrixXd stationary_covariance(const LinearGaussianDynamics& dyn) {
  if (dyn.A().eigenvalues().cwiseAbs().maxCoeff() >= 1.0) {
    throw std::invalid_argument("stationary_covariance: dynamics are not stable");
  }
  Eigen::MatrixXd p = dyn.process_noise().covariance();
  Eigen::MatrixXd power = dyn.A();
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::MatrixXd increment = power * p * power.transpose();
    p += increment;
    power = power * power;
    if (!p.allFinite() || !power.allFinite()) break;
    if (increment.stableNorm() <= 1e-15 * p.stableNorm()) return symmetrize(p);
  }
  throw std::invalid_argument("stationary_covariance: dynamics are not stable");
}

double student_t_logpdf(double z, double nu) {
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * std::numbers::pi) -
         0.5 * (nu + 1.0) * std::log1p(z * z / nu);
}

namespace {

double saturate(double beta, double x) { return beta == 0.0 ? x : std::tanh(beta * x) / beta; }

}  // namespace

double ar_observation_logdensity(const ArSsmSpec& spec, double y, double x1) {
  const double z = (y - saturate(spec.beta, x1)) / spec.sigma_e;
  return student_t_logpdf(z, spec.nu) - std::log(spec.sigma_e);
}

ArModel::ArModel(ArSsmSpec spec)
    : spec_((spec.validate(), std::move(spec))),
      dynamics_(ar_dynamics(spec_)),
      initial_(stationary_covariance(dynamics_)),
      t_log_norm_(std::lgamma(0.5 * (spec_.nu + 1.0)) - std::lgamma(0.5 * spec_.nu) -
                  0.5 * std::log(spec_.nu * std::numbers::pi) - std::log(spec_.sigma_e)) {}

void ArModel::sample_initial(RandomSource& rng, MutableState out) const {
  initial_.sample(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec_.order())), rng, as_vector(out));
}

double ArModel::log_initial(ConstState x) const {
  return initial_.log_density(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec_.order())), as_vector(x));
}

void ArModel::sample_transition(std::size_t, ConstState prev, RandomSource& rng, MutableState out) const {
  const std::size_t n = spec_.order();
  double head = 0.0;
  for (std::size_t j = 0; j < n; ++j) head += spec_.alpha[j] * prev[j];
  for (std::size_t j = n - 1; j > 0; --j) out[j] = prev[j - 1];
  out[0] = head + spec_.sigma_v * rng.normal();
}

double ArModel::log_transition(std::size_t, ConstState prev, ConstState x) const {
  const std::size_t n = spec_.order();
  double scale = 1.0;
  double off_support = 0.0;
  double head = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    head += spec_.alpha[j] * prev[j];
    scale += std::abs(prev[j]) + std::abs(x[j]);
    if (j > 0) off_support = std::max(off_support, std::abs(x[j] - prev[j - 1]));
  }
  // Same support rule as CovarianceFactor, specialised to the shift structure.
  if (off_support > CovarianceFactor::kDefaultResidualTol * scale) return -INFINITY;
  const double r = (x[0] - head) / spec_.sigma_v;
  return -0.5 * (r * r + std::log(2.0 * std::numbers::pi)) - std::log(spec_.sigma_v);
}

void ArModel::sample_observation(std::size_t, ConstState x, RandomSource& rng, MutableState y) const {
  const double chi2 = rng.gamma(0.5 * spec_.nu, 2.0);
  const double e = rng.normal() / std::sqrt(chi2 / spec_.nu);
  y[0] = saturate(spec_.beta, x[0]) + spec_.sigma_e * e;
}

double ArModel::log_observation(std::size_t, ConstState x, ConstState y) const {
  const double z = (y[0] - saturate(spec_.beta, x[0])) / spec_.sigma_e;
  return t_log_norm_ - 0.5 * (spec_.nu + 1.0) * std::log1p(z * z / spec_.nu);
}

}  // namespace pgas
