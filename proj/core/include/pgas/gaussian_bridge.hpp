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
#include <cstddef>
#include <vector>

#include "pgas/gaussian.hpp"
#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"

namespace pgas {

/// x_{t+1} = A x_t + F v_{t+1}, v ~ N(0, I_d). F F^T may be rank-deficient.
class LinearGaussianDynamics {
 public:
  LinearGaussianDynamics(Eigen::MatrixXd a, Eigen::MatrixXd f);

  const Eigen::MatrixXd& A() const { return a_; }
  const Eigen::MatrixXd& F() const { return f_; }
  Eigen::Index state_dim() const { return a_.rows(); }
  Eigen::Index noise_dim() const { return f_.cols(); }
  /// Factor of the process covariance F F^T.
  const CovarianceFactor& process_noise() const { return noise_; }

  void step(const Eigen::Ref<const Eigen::VectorXd>& x, RandomSource& rng, Eigen::Ref<Eigen::VectorXd> out) const;
  /// log N(x_next; A x, F F^T), -inf off the support.
  double log_transition(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& x_next) const;

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd f_;
  CovarianceFactor noise_;
};

struct ControllabilityData {
  std::size_t ell = 0;
  Eigen::MatrixXd matrix;  // [F, AF, ..., A^ell F]
  std::size_t rank = 0;
  double tolerance = 0.0;
};

/// [F, AF, ..., A^ell F].
Eigen::MatrixXd controllability_matrix(const LinearGaussianDynamics& dyn, std::size_t ell);

/// Numerical rank: singular values above tol * (largest singular value).
std::size_t numerical_rank(const Eigen::MatrixXd& m, double tol);

/// Smallest ell in 0..n-1 with rank(C_ell) = n. Throws NotControllable otherwise.
ControllabilityData controllability_index(const LinearGaussianDynamics& dyn, double tol = 1e-9);

/// p(x_{t+ell} | x_{t-1}) = N(A^{ell+1} x_start, C_ell C_ell^T).
GaussianDensity ell_step_marginal(const LinearGaussianDynamics& dyn, const Eigen::VectorXd& x_start, std::size_t ell);

/// Endpoint-conditioned sampler for a window xi_0..xi_{L-1} of linear-Gaussian
/// states, with xi_0 ~ N(first_mean, first_cov), xi_{j+1} = A xi_j + F v, and
/// an endpoint e = A xi_{L-1} + F v treated as an exact observation.
///
/// All covariances, gains and factors are independent of the means, so they
/// are computed once here; each draw then costs O(L n^2). The draw is a
/// forward pass of covariance prediction followed by a terminal measurement
/// update (pseudo-inverse on the innovation's column space) and backward
/// simulation.
class GaussianBridge {
 public:
  /// Window following a known state s: first_mean = A s, first_cov = F F^T.
  GaussianBridge(const LinearGaussianDynamics& dyn, std::size_t length);
  /// Window starting from an arbitrary Gaussian (used at t = 0 with the prior).
  GaussianBridge(const LinearGaussianDynamics& dyn, std::size_t length, const Eigen::MatrixXd& first_cov);

  std::size_t length() const { return length_; }
  Eigen::Index state_dim() const { return dyn_.state_dim(); }
  const LinearGaussianDynamics& dynamics() const { return dyn_; }

  /// Mean of xi_0 for a window that follows state s.
  Eigen::VectorXd first_mean_after(const Eigen::Ref<const Eigen::VectorXd>& s) const { return dyn_.A() * s; }

  /// Marginal of the endpoint: N(A^L first_mean, P_L).
  const CovarianceFactor& endpoint_factor() const { return endpoint_; }
  double log_endpoint_density(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                              const Eigen::Ref<const Eigen::VectorXd>& endpoint) const;

  /// True when the endpoint lies in the support of its marginal.
  bool reachable(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                 const Eigen::Ref<const Eigen::VectorXd>& endpoint) const;

  /// Draw the window given the endpoint. `window` must be L x n. Throws
  /// NumericalRankFailure if the endpoint lies outside the reachable set.
  void sample(const Eigen::Ref<const Eigen::VectorXd>& first_mean, const Eigen::Ref<const Eigen::VectorXd>& endpoint,
              RandomSource& rng, Trajectory& window) const;

  /// Draw the window from the unconditioned dynamics (no endpoint).
  void sample_forward(const Eigen::Ref<const Eigen::VectorXd>& first_mean, RandomSource& rng, Trajectory& window) const;

  /// log p(window | first_mean, endpoint): the product of the backward
  /// conditionals used by `sample`, plus log_measure_correction(). With the
  /// correction the density is taken against the same reference measure as
  /// log_joint_density, so joint / conditional equals the endpoint marginal
  /// even when F F^T is rank-deficient.
  double log_density(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                     const Eigen::Ref<const Eigen::VectorXd>& endpoint, const Trajectory& window) const;
  /// log p(window, endpoint | first_mean) along the forward dynamics.
  double log_joint_density(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                           const Eigen::Ref<const Eigen::VectorXd>& endpoint, const Trajectory& window) const;
  /// log of the ratio between the forward and backward parametrisations of
  /// the joint support: 0.5 log det(G_F^T G_F) - 0.5 log det(G_B^T G_B).
  /// Zero when every factor is full rank.
  double log_measure_correction() const { return log_correction_; }
  /// log p(window | first_mean) along the forward dynamics, no endpoint.
  double log_forward_density(const Eigen::Ref<const Eigen::VectorXd>& first_mean, const Trajectory& window) const;

 private:
  void precompute();
  void compute_measure_correction();

  LinearGaussianDynamics dyn_;
  std::size_t length_;
  CovarianceFactor first_;
  std::vector<Eigen::MatrixXd> powers_;     // A^j, j = 0..L
  std::vector<Eigen::MatrixXd> predicted_;  // P_j, j = 0..L
  CovarianceFactor endpoint_;
  Eigen::MatrixXd terminal_gain_;
  CovarianceFactor terminal_;
  std::vector<Eigen::MatrixXd> backward_gain_;     // G_j, j = 0..L-2
  std::vector<CovarianceFactor> backward_;         // j = 0..L-2
  double log_correction_ = 0.0;
};

/// One endpoint-conditioned draw of the ell states strictly between x_start
/// and x_end.
Trajectory kalman_bridge_sample(const LinearGaussianDynamics& dyn, const Eigen::VectorXd& x_start,
                                const Eigen::VectorXd& x_end, std::size_t ell, RandomSource& rng);

}  // namespace pgas
