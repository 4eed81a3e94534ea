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

#include "pgas/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pgas {

CovarianceFactor::CovarianceFactor(const Eigen::MatrixXd& covariance, double rank_tol, double residual_tol,
                                   double reference_scale)
    : covariance_(symmetrize(covariance)), residual_tol_(residual_tol) {
  if (covariance.rows() != covariance.cols()) throw std::invalid_argument("covariance must be square");
  if (!covariance.allFinite()) throw std::invalid_argument("covariance has non-finite entries");
  const Eigen::Index n = covariance_.rows();
  if (n == 0) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance_);
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double largest = values.maxCoeff();
  const double scale = std::max(largest, reference_scale);
  if (values.minCoeff() < -1e-8 * std::max(1.0, scale)) {
    throw std::invalid_argument("covariance is not positive semi-definite");
  }
  const double cutoff = scale > 0.0 ? rank_tol * scale : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < n; ++i) rank += values(i) > cutoff ? 1 : 0;
  basis_.resize(n, rank);
  eigenvalues_.resize(rank);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values(i) > cutoff) {
      basis_.col(k) = eig.eigenvectors().col(i);
      eigenvalues_(k) = values(i);
      ++k;
    }
  }
  sqrt_factor_ = basis_ * eigenvalues_.cwiseSqrt().asDiagonal();
  log_pdet_ = eigenvalues_.array().log().sum();
}

Eigen::MatrixXd CovarianceFactor::pseudo_inverse() const {
  return basis_ * eigenvalues_.cwiseInverse().asDiagonal() * basis_.transpose();
}

bool CovarianceFactor::in_support(const Eigen::Ref<const Eigen::VectorXd>& residual, double scale) const {
  if (full_rank()) return true;
  const Eigen::VectorXd outside = residual - basis_ * (basis_.transpose() * residual);
  return outside.norm() <= residual_tol_ * (1.0 + scale);
}

double CovarianceFactor::log_density_residual(const Eigen::Ref<const Eigen::VectorXd>& residual) const {
  const Eigen::VectorXd projected = basis_.transpose() * residual;
  const double quad = (projected.array().square() / eigenvalues_.array()).sum();
  return -0.5 * (quad + log_pdet_ + static_cast<double>(rank()) * std::log(2.0 * std::numbers::pi));
}

double CovarianceFactor::log_density(const Eigen::Ref<const Eigen::VectorXd>& mean,
                                     const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::VectorXd residual = x - mean;
  if (!in_support(residual, x.norm() + mean.norm())) return -std::numeric_limits<double>::infinity();
  return log_density_residual(residual);
}

void CovarianceFactor::sample(const Eigen::Ref<const Eigen::VectorXd>& mean, RandomSource& rng,
                              Eigen::Ref<Eigen::VectorXd> out) const {
  Eigen::VectorXd z(rank());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  out = mean + sqrt_factor_ * z;
}

GaussianDensity::GaussianDensity(Eigen::VectorXd mean, const Eigen::MatrixXd& covariance, double rank_tol)
    : mean_(std::move(mean)), factor_(covariance, rank_tol) {
  if (mean_.size() != factor_.dim()) throw std::invalid_argument("GaussianDensity: dimension mismatch");
}

Eigen::VectorXd GaussianDensity::sample(RandomSource& rng) const {
  Eigen::VectorXd out(mean_.size());
  factor_.sample(mean_, rng, out);
  return out;
}

}  // namespace pgas
