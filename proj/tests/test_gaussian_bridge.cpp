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

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "bridge_oracle.hpp"
#include "pgas/errors.hpp"
#include "pgas/gaussian_bridge.hpp"
#include "pgas/models/autoregressive.hpp"

namespace pgas {
namespace {

LinearGaussianDynamics default_ar5() { return ar_dynamics(ArSsmSpec{}); }

using testing::flatten;
using testing::random_system;

TEST(Controllability, InvertibleFIsIndexZero) {
  Eigen::MatrixXd f(2, 2);
  f << 1.0, 0.5, 0.0, 2.0;
  const auto data = controllability_index(LinearGaussianDynamics(Eigen::MatrixXd::Identity(2, 2), f));
  EXPECT_EQ(data.ell, 0u);
  EXPECT_EQ(data.rank, 2u);
}

TEST(Controllability, Ar5NeedsFourSteps) {
  const auto data = controllability_index(default_ar5());
  EXPECT_EQ(data.ell, 4u);
  EXPECT_EQ(data.matrix.cols(), 5);
  EXPECT_EQ(numerical_rank(controllability_matrix(default_ar5(), 3), 1e-9), 4u);
}

TEST(Controllability, IdentityWithSingleInputIsNotControllable) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2, 1);
  f(0, 0) = 1.0;
  EXPECT_THROW(controllability_index(LinearGaussianDynamics(Eigen::MatrixXd::Identity(2, 2), f)), NotControllable);
}

TEST(Controllability, RankIsMonotoneAndStable) {
  RandomSource rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::MatrixXd a, f;
    random_system(rng, a, f);
    const LinearGaussianDynamics dyn(a, f);
    std::size_t previous = 0;
    const auto n = static_cast<std::size_t>(a.rows());
    for (std::size_t ell = 0; ell < n + 3; ++ell) {
      const std::size_t r = numerical_rank(controllability_matrix(dyn, ell), 1e-9);
      EXPECT_GE(r, previous);
      if (ell >= n) EXPECT_EQ(r, previous);
      previous = r;
    }
  }
}

TEST(EllStepMarginal, ScalarOneStep) {
  const LinearGaussianDynamics dyn(Eigen::MatrixXd::Constant(1, 1, 0.8), Eigen::MatrixXd::Constant(1, 1, 0.5));
  const auto g = ell_step_marginal(dyn, Eigen::VectorXd::Constant(1, 2.0), 0);
  EXPECT_DOUBLE_EQ(g.mean()(0), 1.6);
  EXPECT_DOUBLE_EQ(g.covariance()(0, 0), 0.25);
}

TEST(EllStepMarginal, NilpotentExpansion) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 1) = 1.0;
  Eigen::MatrixXd f(2, 1);
  f << 0.3, 1.0;
  const LinearGaussianDynamics dyn(a, f);
  const auto g = ell_step_marginal(dyn, Eigen::Vector2d(1.0, 1.0), 1);
  const Eigen::MatrixXd expected = f * f.transpose() + a * f * f.transpose() * a.transpose();
  EXPECT_TRUE(g.covariance().isApprox(expected, 1e-14));
  EXPECT_TRUE(g.mean().isZero());
}

TEST(EllStepMarginal, Ar5MatchesSimulation) {
  const auto dyn = default_ar5();
  const auto g = ell_step_marginal(dyn, Eigen::VectorXd::Zero(5), 4);
  EXPECT_TRUE(g.mean().isZero());
  RandomSource rng(17);
  const int draws = 1000000;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(5, 5);
  Eigen::VectorXd x(5), next(5);
  for (int i = 0; i < draws; ++i) {
    x.setZero();
    for (int s = 0; s < 5; ++s) {
      dyn.step(x, rng, next);
      x = next;
    }
    acc += x * x.transpose();
  }
  acc /= draws;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double scale = std::sqrt(g.covariance()(i, i) * g.covariance()(j, j));
      EXPECT_NEAR(acc(i, j), g.covariance()(i, j), 0.02 * scale) << i << "," << j;
    }
  }
}

TEST(GaussianBridge, ScalarOneStepConditional) {
  const double a = 0.7, f = 0.4, x0 = 1.3, x2 = -0.2;
  const LinearGaussianDynamics dyn(Eigen::MatrixXd::Constant(1, 1, a), Eigen::MatrixXd::Constant(1, 1, f));
  const GaussianBridge bridge(dyn, 1);
  // x1 ~ N(a x0, f^2), x2 | x1 ~ N(a x1, f^2).
  const double var = f * f / (1.0 + a * a);
  const double mean = var * (a * x0 / (f * f) + a * x2 / (f * f));
  const Eigen::VectorXd m = bridge.first_mean_after(Eigen::VectorXd::Constant(1, x0));
  const Eigen::VectorXd e = Eigen::VectorXd::Constant(1, x2);
  auto logp = [&](double v) {
    Trajectory w(1, 1);
    w(0, 0) = v;
    return bridge.log_density(m, e, w);
  };
  // Recover mean and variance from the log-density's quadratic.
  const double h = 0.5;
  const double c0 = logp(0.0), cp = logp(h), cm = logp(-h);
  const double curvature = (cp - 2.0 * c0 + cm) / (h * h);
  const double slope = (cp - cm) / (2.0 * h);
  EXPECT_NEAR(-1.0 / curvature, var, 1e-8);
  EXPECT_NEAR(-slope / curvature, mean, 1e-8);
  EXPECT_NEAR(c0, -0.5 * (mean * mean / var + std::log(2.0 * std::numbers::pi * var)), 1e-8);
}

TEST(GaussianBridge, SmallNoiseFollowsNoiselessPath) {
  Eigen::MatrixXd a(2, 2);
  a << 0.9, 0.2, -0.1, 0.8;
  const LinearGaussianDynamics dyn(a, 1e-6 * Eigen::MatrixXd::Identity(2, 2));
  const Eigen::Vector2d start(1.0, -2.0);
  std::vector<Eigen::VectorXd> path{a * start};
  for (int j = 0; j < 3; ++j) path.push_back(a * path.back());
  RandomSource rng(2);
  const Trajectory w = kalman_bridge_sample(dyn, start, path[3], 3, rng);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(w(j, 0), path[j](0), 1e-5);
    EXPECT_NEAR(w(j, 1), path[j](1), 1e-5);
  }
}

void check_against_dense(std::size_t length, int draws, std::uint64_t seed) {
  const auto dyn = default_ar5();
  RandomSource rng(seed);
  Eigen::VectorXd start(5), endpoint(5);
  for (int i = 0; i < 5; ++i) start(i) = rng.normal();
  const GaussianBridge bridge(dyn, length);
  const Eigen::VectorXd m = bridge.first_mean_after(start);
  // Endpoint drawn from its marginal so that it is reachable.
  Eigen::VectorXd endpoint_mean = m;
  for (std::size_t j = 0; j < length; ++j) endpoint_mean = dyn.A() * endpoint_mean;
  bridge.endpoint_factor().sample(endpoint_mean, rng, endpoint);
  const auto oracle =
      testing::dense_bridge_conditional(dyn, m, dyn.F() * dyn.F().transpose(), length, endpoint);
  const Eigen::Index k = oracle.mean.size();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd outer = Eigen::MatrixXd::Zero(k, k);
  Trajectory w(length, 5);
  for (int i = 0; i < draws; ++i) {
    bridge.sample(m, endpoint, rng, w);
    const Eigen::VectorXd v = flatten(w) - oracle.mean;
    sum += v;
    outer += v * v.transpose();
  }
  const Eigen::VectorXd mean_err = sum / draws;
  const Eigen::MatrixXd cov = outer / draws - mean_err * mean_err.transpose();
  const double tiny = 1e-8 * (1.0 + oracle.mean.norm());
  for (Eigen::Index i = 0; i < k; ++i) {
    const double se = std::sqrt(std::max(oracle.cov(i, i), 0.0) / draws);
    EXPECT_LE(std::abs(mean_err(i)), 3.0 * se + tiny) << "component " << i;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double vi = std::max(oracle.cov(i, i), 0.0), vj = std::max(oracle.cov(j, j), 0.0);
      const double cse = std::sqrt((vi * vj + oracle.cov(i, j) * oracle.cov(i, j)) / draws);
      EXPECT_LE(std::abs(cov(i, j) - oracle.cov(i, j)), 3.0 * cse + tiny) << i << "," << j;
    }
  }
}

TEST(GaussianBridge, Ar5FourStepBridgeMatchesDenseConditioning) { check_against_dense(4, 20000, 5); }

TEST(GaussianBridge, Ar5SixStepBridgeMatchesDenseConditioning) { check_against_dense(6, 20000, 6); }

TEST(GaussianBridge, Ar5FourStepBridgeIsDeterministic) {
  const GaussianBridge bridge(default_ar5(), 4);
  EXPECT_EQ(bridge.endpoint_factor().rank(), 5);
  RandomSource rng(8);
  Eigen::VectorXd start(5), endpoint(5);
  for (int i = 0; i < 5; ++i) start(i) = rng.normal(), endpoint(i) = rng.normal();
  const Eigen::VectorXd m = bridge.first_mean_after(start);
  Trajectory a(4, 5), b(4, 5);
  bridge.sample(m, endpoint, rng, a);
  bridge.sample(m, endpoint, rng, b);
  EXPECT_LT((flatten(a) - flatten(b)).norm(), 1e-8);
  // Shift structure: each state holds the previous state's leading entries.
  EXPECT_NEAR(endpoint(1), a(3, 0), 1e-8);
  EXPECT_NEAR(a(1, 1), a(0, 0), 1e-8);
}

TEST(GaussianBridge, DensityRatioIsEndpointMarginal) {
  RandomSource rng(21);
  int systems = 0;
  while (systems < 100) {
    Eigen::MatrixXd a, f;
    if (!random_system(rng, a, f)) continue;
    ++systems;
    const LinearGaussianDynamics dyn(a, f);
    const std::size_t ell = controllability_index(dyn).ell;
    const std::size_t length = std::max<std::size_t>(1, ell) + (rng.uniform() < 0.5 ? 1 : 0);
    const GaussianBridge bridge(dyn, length);
    const auto n = a.rows();
    Eigen::VectorXd start(n);
    for (Eigen::Index i = 0; i < n; ++i) start(i) = rng.normal();
    const Eigen::VectorXd m = bridge.first_mean_after(start);
    Trajectory path(length, static_cast<std::size_t>(n));
    bridge.sample_forward(m, rng, path);
    Eigen::VectorXd endpoint(n);
    dyn.step(as_vector(path.at(length - 1)), rng, endpoint);
    const double marginal = bridge.log_endpoint_density(m, endpoint);
    // Forward path, then two bridge draws for the same endpoint.
    for (int k = 0; k < 3; ++k) {
      if (k > 0) bridge.sample(m, endpoint, rng, path);
      const double ratio = bridge.log_joint_density(m, endpoint, path) - bridge.log_density(m, endpoint, path);
      EXPECT_NEAR(ratio, marginal, 1e-6) << "system " << systems << " n=" << n << " d=" << f.cols();
    }
  }
}

TEST(GaussianBridge, EveryEndpointIsReachableWhenControllable) {
  RandomSource rng(31);
  int systems = 0;
  while (systems < 100) {
    Eigen::MatrixXd a, f;
    if (!random_system(rng, a, f)) continue;
    ++systems;
    const LinearGaussianDynamics dyn(a, f);
    const std::size_t ell = controllability_index(dyn).ell;
    const auto n = a.rows();
    Eigen::VectorXd start(n), end(n);
    for (Eigen::Index i = 0; i < n; ++i) start(i) = 3.0 * rng.normal(), end(i) = 3.0 * rng.normal();
    const GaussianBridge bridge(dyn, std::max<std::size_t>(1, ell));
    EXPECT_TRUE(bridge.reachable(bridge.first_mean_after(start), end));
    EXPECT_NO_THROW(kalman_bridge_sample(dyn, start, end, std::max<std::size_t>(1, ell), rng));
  }
}

TEST(GaussianBridge, UnreachableEndpointThrows) {
  const auto dyn = default_ar5();
  const GaussianBridge bridge(dyn, 2);
  Eigen::VectorXd start = Eigen::VectorXd::Zero(5), end = Eigen::VectorXd::Zero(5);
  end(4) = 1.0;
  EXPECT_FALSE(bridge.reachable(bridge.first_mean_after(start), end));
  RandomSource rng(1);
  Trajectory w(2, 5);
  EXPECT_THROW(bridge.sample(bridge.first_mean_after(start), end, rng, w), NumericalRankFailure);
}

TEST(GaussianBridge, ForwardSampleFromPriorStart) {
  const auto dyn = default_ar5();
  const Eigen::MatrixXd p0 = stationary_covariance(dyn);
  const GaussianBridge bridge(dyn, 4, p0);
  RandomSource rng(4);
  Eigen::VectorXd endpoint(5);
  for (int i = 0; i < 5; ++i) endpoint(i) = rng.normal();
  const auto oracle = testing::dense_bridge_conditional(dyn, Eigen::VectorXd::Zero(5), p0, 4, endpoint);
  Trajectory w(4, 5);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(20);
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    bridge.sample(Eigen::VectorXd::Zero(5), endpoint, rng, w);
    sum += flatten(w);
  }
  sum /= draws;
  for (Eigen::Index i = 0; i < 20; ++i) {
    EXPECT_NEAR(sum(i), oracle.mean(i), 4.0 * std::sqrt(std::max(oracle.cov(i, i), 0.0) / draws) + 1e-8);
  }
}

}  // namespace
}  // namespace pgas
