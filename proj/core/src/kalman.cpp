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

#include "pgas/kalman.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pgas/errors.hpp"

namespace pgas {

void LgssmSpec::validate() const {
  const Eigen::Index n = dynamics.state_dim();
  if (observation.cols() != n) throw std::invalid_argument("LgssmSpec: H has wrong number of columns");
  if (observation_cov.rows() != observation.rows() || observation_cov.cols() != observation.rows()) {
    throw std::invalid_argument("LgssmSpec: R shape mismatch");
  }
  if (initial_mean.size() != n || initial_cov.rows() != n || initial_cov.cols() != n) {
    throw std::invalid_argument("LgssmSpec: initial distribution shape mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(observation_cov);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("LgssmSpec: R must be positive definite");
}

LgssmSpec scalar_lgssm(double a, double q, double r, double m0, double p0) {
  return LgssmSpec{LinearGaussianDynamics(Eigen::MatrixXd::Constant(1, 1, a), Eigen::MatrixXd::Constant(1, 1, q)),
                   Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Constant(1, 1, r * r),
                   Eigen::VectorXd::Constant(1, m0), Eigen::MatrixXd::Constant(1, 1, p0)};
}

KalmanFilterResult kalman_filter(const LgssmSpec& spec, const Trajectory& observations) {
  spec.validate();
  const std::size_t horizon = observations.length();
  const Eigen::MatrixXd& a = spec.dynamics.A();
  const Eigen::MatrixXd& q = spec.dynamics.process_noise().covariance();
  const Eigen::MatrixXd& h = spec.observation;
  const double log_2pi = std::log(2.0 * std::numbers::pi);

  KalmanFilterResult out;
  out.predicted_means.reserve(horizon);
  out.predicted_covs.reserve(horizon);
  out.filtered_means.reserve(horizon);
  out.filtered_covs.reserve(horizon);

  Eigen::VectorXd m = spec.initial_mean;
  Eigen::MatrixXd p = spec.initial_cov;
  for (std::size_t t = 0; t < horizon; ++t) {
    if (t > 0) {
      m = a * m;
      p = symmetrize(a * p * a.transpose() + q);
    }
    out.predicted_means.push_back(m);
    out.predicted_covs.push_back(p);

    const Eigen::VectorXd innovation = as_vector(observations.at(t)) - h * m;
    const Eigen::MatrixXd s = symmetrize(h * p * h.transpose() + spec.observation_cov);
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success) throw NumericalRankFailure("singular innovation covariance");
    const Eigen::MatrixXd gain = llt.solve(h * p).transpose();
    const Eigen::VectorXd whitened = llt.matrixL().solve(innovation);
    const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    out.log_likelihood += -0.5 * (whitened.squaredNorm() + log_det + static_cast<double>(s.rows()) * log_2pi);

    m = m + gain * innovation;
    p = symmetrize(p - gain * s * gain.transpose());
    out.filtered_means.push_back(m);
    out.filtered_covs.push_back(p);
  }
  return out;
}

KalmanSmootherResult kalman_smoother(const LgssmSpec& spec, const Trajectory& observations) {
  const KalmanFilterResult filter = kalman_filter(spec, observations);
  const std::size_t horizon = observations.length();
  const Eigen::MatrixXd& a = spec.dynamics.A();

  KalmanSmootherResult out;
  out.log_likelihood = filter.log_likelihood;
  out.means = filter.filtered_means;
  out.covs = filter.filtered_covs;
  out.lag_one_covs.assign(horizon > 0 ? horizon - 1 : 0, Eigen::MatrixXd());
  for (std::size_t t = horizon - 1; t-- > 0;) {
    const CovarianceFactor predicted(filter.predicted_covs[t + 1]);
    const Eigen::MatrixXd gain = filter.filtered_covs[t] * a.transpose() * predicted.pseudo_inverse();
    out.means[t] = filter.filtered_means[t] + gain * (out.means[t + 1] - filter.predicted_means[t + 1]);
    out.covs[t] = symmetrize(filter.filtered_covs[t] +
                             gain * (out.covs[t + 1] - filter.predicted_covs[t + 1]) * gain.transpose());
    out.lag_one_covs[t] = gain * out.covs[t + 1];
  }
  return out;
}

Trajectory ffbs_sample(const LgssmSpec& spec, const Trajectory& observations, RandomSource& rng) {
  const KalmanFilterResult filter = kalman_filter(spec, observations);
  const std::size_t horizon = observations.length();
  const Eigen::MatrixXd& a = spec.dynamics.A();
  Trajectory draw(horizon, static_cast<std::size_t>(spec.state_dim()));

  CovarianceFactor(filter.filtered_covs[horizon - 1])
      .sample(filter.filtered_means[horizon - 1], rng, as_vector(draw.at(horizon - 1)));
  for (std::size_t t = horizon - 1; t-- > 0;) {
    const CovarianceFactor predicted(filter.predicted_covs[t + 1]);
    const Eigen::MatrixXd gain = filter.filtered_covs[t] * a.transpose() * predicted.pseudo_inverse();
    const Eigen::VectorXd mean =
        filter.filtered_means[t] + gain * (as_vector(draw.at(t + 1)) - filter.predicted_means[t + 1]);
    const Eigen::MatrixXd cov = symmetrize(filter.filtered_covs[t] - gain * a * filter.filtered_covs[t]);
    CovarianceFactor(cov).sample(mean, rng, as_vector(draw.at(t)));
  }
  return draw;
}

}  // namespace pgas
