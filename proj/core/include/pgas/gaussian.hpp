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

#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"

namespace pgas {

inline Eigen::Map<const Eigen::VectorXd> as_vector(ConstState s) {
  return {s.data(), static_cast<Eigen::Index>(s.size())};
}
inline Eigen::Map<Eigen::VectorXd> as_vector(MutableState s) { return {s.data(), static_cast<Eigen::Index>(s.size())}; }

/// Spectral factorisation of a (possibly rank-deficient) covariance matrix.
///
/// Eigenvalues at or below rank_tol * (largest eigenvalue) are treated as exact
/// zeros: the density lives on mean + span(basis) and is evaluated against
/// Lebesgue measure on that affine subspace. No jitter is ever added.
class CovarianceFactor {
 public:
  static constexpr double kDefaultRankTol = 1e-9;
  static constexpr double kDefaultResidualTol = 1e-9;

  CovarianceFactor() = default;
  /// `reference_scale` sets the magnitude below which a whole matrix counts as
  /// zero, for covariances obtained by cancellation (e.g. conditionals).
  explicit CovarianceFactor(const Eigen::MatrixXd& covariance, double rank_tol = kDefaultRankTol,
                            double residual_tol = kDefaultResidualTol, double reference_scale = 0.0);

  Eigen::Index dim() const { return covariance_.rows(); }
  Eigen::Index rank() const { return basis_.cols(); }
  bool full_rank() const { return rank() == dim(); }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  /// Orthonormal basis of the column space, n x rank.
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// basis * diag(sqrt(eigenvalues)).
  const Eigen::MatrixXd& sqrt_factor() const { return sqrt_factor_; }
  Eigen::MatrixXd pseudo_inverse() const;
  double log_pseudo_determinant() const { return log_pdet_; }

  /// True when the component of `residual` outside the support is within
  /// residual_tol * (1 + scale).
  bool in_support(const Eigen::Ref<const Eigen::VectorXd>& residual, double scale) const;

  /// Log-density of N(mean, covariance) at x; -inf off the support.
  double log_density(const Eigen::Ref<const Eigen::VectorXd>& mean, const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Quadratic-form part only, given residual x - mean already known to be in support.
  double log_density_residual(const Eigen::Ref<const Eigen::VectorXd>& residual) const;

  /// out = mean + sqrt_factor * z, z ~ N(0, I_rank).
  void sample(const Eigen::Ref<const Eigen::VectorXd>& mean, RandomSource& rng, Eigen::Ref<Eigen::VectorXd> out) const;

 private:
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd basis_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd sqrt_factor_;
  double log_pdet_ = 0.0;
  double residual_tol_ = kDefaultResidualTol;
};

/// N(mean, covariance) with rank deficiency allowed.
class GaussianDensity {
 public:
  GaussianDensity(Eigen::VectorXd mean, const Eigen::MatrixXd& covariance,
                  double rank_tol = CovarianceFactor::kDefaultRankTol);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return factor_.covariance(); }
  const CovarianceFactor& factor() const { return factor_; }
  Eigen::Index rank() const { return factor_.rank(); }

  double log_density(const Eigen::Ref<const Eigen::VectorXd>& x) const { return factor_.log_density(mean_, x); }
  Eigen::VectorXd sample(RandomSource& rng) const;

 private:
  Eigen::VectorXd mean_;
  CovarianceFactor factor_;
};

/// (M + M^T) / 2.
inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace pgas
