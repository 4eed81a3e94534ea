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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pgas/kalman.hpp"
#include "test_support.hpp"

namespace pgas {
namespace {

using testing::scalar_series;

LgssmSpec random_stable_spec(RandomSource& rng, Eigen::Index n, Eigen::Index p) {
  Eigen::MatrixXd a(n, n), f(n, n), h(p, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  a *= 0.8 / std::max(1.0, a.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < f.size(); ++i) f.data()[i] = 0.5 * rng.normal();
  for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = rng.normal();
  Eigen::MatrixXd r = 0.3 * Eigen::MatrixXd::Identity(p, p);
  return LgssmSpec{LinearGaussianDynamics(a, f), h, r, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Identity(n, n)};
}

Trajectory random_observations(RandomSource& rng, std::size_t horizon, std::size_t p) {
  Trajectory y(horizon, p);
  for (double& v : y.data()) v = rng.normal();
  return y;
}

TEST(KalmanFilter, TinyObservationNoiseTracksObservations) {
  const auto spec = scalar_lgssm(0.9, 1.0, 1e-8);
  const Trajectory y = scalar_series({0.5, -1.0, 2.0, 0.3});
  const auto result = kalman_filter(spec, y);
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_NEAR(result.filtered_means[t](0), y(t, 0), 1e-7);
    EXPECT_LT(result.filtered_covs[t](0, 0), 1e-15);
  }
}

TEST(KalmanFilter, RandomWalkReachesGoldenRatioSteadyState) {
  const auto spec = scalar_lgssm(1.0, 1.0, 1.0);
  Trajectory y(200, 1);
  const auto result = kalman_filter(spec, y);
  // Riccati fixed point P = (P + 1) / (P + 2) by iteration.
  double p = 1.0;
  for (int i = 0; i < 200; ++i) p = (p + 1.0) / (p + 2.0);
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  EXPECT_NEAR(p, 1.0 / phi, 1e-14);
  EXPECT_NEAR(result.filtered_covs.back()(0, 0), p, 1e-12);
  EXPECT_NEAR(result.predicted_covs.back()(0, 0), p + 1.0, 1e-12);
}

TEST(KalmanFilter, ThreeStepHandRecursion) {
  const double a = 0.5, q = 1.0, r = 2.0;
  const auto spec = scalar_lgssm(a, q, r, 1.0, 3.0);
  const Trajectory y = scalar_series({2.0, 0.0, -1.0});
  const auto result = kalman_filter(spec, y);
  double m = 1.0, p = 3.0, ll = 0.0;
  for (std::size_t t = 0; t < 3; ++t) {
    if (t > 0) {
      m = a * m;
      p = a * a * p + q * q;
    }
    const double s = p + r * r;
    ll += -0.5 * (std::log(2.0 * std::numbers::pi * s) + (y(t, 0) - m) * (y(t, 0) - m) / s);
    const double k = p / s;
    m += k * (y(t, 0) - m);
    p *= 1.0 - k;
    EXPECT_NEAR(result.filtered_means[t](0), m, 1e-14);
    EXPECT_NEAR(result.filtered_covs[t](0, 0), p, 1e-14);
  }
  EXPECT_NEAR(result.log_likelihood, ll, 1e-12);
}

TEST(KalmanFilter, LikelihoodMatchesDenseGaussian) {
  RandomSource rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const auto spec = random_stable_spec(rng, 3, 2);
    const Trajectory y = random_observations(rng, 8, 2);
    EXPECT_NEAR(kalman_filter(spec, y).log_likelihood, testing::dense_lgssm_posterior(spec, y).log_likelihood, 1e-9);
  }
}

TEST(KalmanFilter, RejectsInconsistentShapes) {
  auto spec = scalar_lgssm(1.0, 1.0, 1.0);
  spec.observation_cov = Eigen::MatrixXd::Zero(1, 1);
  EXPECT_THROW(kalman_filter(spec, scalar_series({1.0})), std::invalid_argument);
}

TEST(KalmanSmoother, MatchesDenseConditioning) {
  RandomSource rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    const auto spec = random_stable_spec(rng, 2, 1);
    const Trajectory y = random_observations(rng, 10, 1);
    const auto smooth = kalman_smoother(spec, y);
    const auto dense = testing::dense_lgssm_posterior(spec, y);
    for (std::size_t t = 0; t < 10; ++t) {
      const auto ti = static_cast<Eigen::Index>(t);
      EXPECT_TRUE(smooth.means[t].isApprox(dense.mean.segment(2 * ti, 2), 1e-9));
      EXPECT_TRUE(smooth.covs[t].isApprox(dense.cov.block(2 * ti, 2 * ti, 2, 2), 1e-9));
      if (t + 1 < 10) EXPECT_TRUE(smooth.lag_one_covs[t].isApprox(dense.cov.block(2 * ti, 2 * ti + 2, 2, 2), 1e-9));
    }
  }
}

TEST(Ffbs, SingleStepDrawsFromFilter) {
  const auto spec = scalar_lgssm(0.9, 1.0, 0.5, 0.0, 2.0);
  const Trajectory y = scalar_series({1.0});
  const auto filter = kalman_filter(spec, y);
  RandomSource rng(7);
  const int draws = 100000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = ffbs_sample(spec, y, rng)(0, 0);
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / draws, var = s2 / draws - mean * mean;
  const double v = filter.filtered_covs[0](0, 0);
  EXPECT_NEAR(mean, filter.filtered_means[0](0), 3.0 * std::sqrt(v / draws));
  EXPECT_NEAR(var, v, 3.0 * v * std::sqrt(2.0 / draws));
}

TEST(Ffbs, MarginalsAndLagOneCovarianceMatchSmoother) {
  RandomSource rng(9);
  const auto spec = random_stable_spec(rng, 2, 1);
  const std::size_t horizon = 6;
  const Trajectory y = random_observations(rng, horizon, 1);
  const auto smooth = kalman_smoother(spec, y);
  const int draws = 100000;
  std::vector<Eigen::Vector2d> sum(horizon, Eigen::Vector2d::Zero());
  std::vector<double> cross(horizon - 1, 0.0);
  for (int i = 0; i < draws; ++i) {
    const Trajectory x = ffbs_sample(spec, y, rng);
    for (std::size_t t = 0; t < horizon; ++t) {
      sum[t] += Eigen::Vector2d(x(t, 0), x(t, 1));
      if (t + 1 < horizon) {
        cross[t] += (x(t, 0) - smooth.means[t](0)) * (x(t + 1, 0) - smooth.means[t + 1](0));
      }
    }
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    for (int j = 0; j < 2; ++j) {
      const double se = std::sqrt(smooth.covs[t](j, j) / draws);
      EXPECT_NEAR(sum[t](j) / draws, smooth.means[t](j), 3.0 * se) << "t=" << t;
    }
    if (t + 1 < horizon) {
      const double c = smooth.lag_one_covs[t](0, 0);
      const double se = std::sqrt((smooth.covs[t](0, 0) * smooth.covs[t + 1](0, 0) + c * c) / draws);
      EXPECT_NEAR(cross[t] / draws, c, 3.0 * se) << "t=" << t;
    }
  }
}

}  // namespace
}  // namespace pgas
