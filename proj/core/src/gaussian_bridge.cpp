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

#include "pgas/gaussian_bridge.hpp"

#include <stdexcept>

#include "pgas/errors.hpp"

namespace pgas {

LinearGaussianDynamics::LinearGaussianDynamics(Eigen::MatrixXd a, Eigen::MatrixXd f)
    : a_(std::move(a)), f_(std::move(f)) {
  if (a_.rows() != a_.cols()) throw std::invalid_argument("A must be square");
  if (f_.rows() != a_.rows()) throw std::invalid_argument("F must have as many rows as A");
  if (!a_.allFinite() || !f_.allFinite()) throw std::invalid_argument("dynamics have non-finite entries");
  noise_ = CovarianceFactor(f_ * f_.transpose());
}

void LinearGaussianDynamics::step(const Eigen::Ref<const Eigen::VectorXd>& x, RandomSource& rng,
                                  Eigen::Ref<Eigen::VectorXd> out) const {
  out.noalias() = a_ * x;
  for (Eigen::Index j = 0; j < f_.cols(); ++j) out += f_.col(j) * rng.normal();
}

double LinearGaussianDynamics::log_transition(const Eigen::Ref<const Eigen::VectorXd>& x,
                                              const Eigen::Ref<const Eigen::VectorXd>& x_next) const {
  return noise_.log_density(a_ * x, x_next);
}

Eigen::MatrixXd controllability_matrix(const LinearGaussianDynamics& dyn, std::size_t ell) {
  const Eigen::Index n = dyn.state_dim();
  const Eigen::Index d = dyn.noise_dim();
  Eigen::MatrixXd c(n, d * static_cast<Eigen::Index>(ell + 1));
  Eigen::MatrixXd block = dyn.F();
  for (std::size_t j = 0; j <= ell; ++j) {
    c.middleCols(static_cast<Eigen::Index>(j) * d, d) = block;
    block = dyn.A() * block;
  }
  return c;
}

std::size_t numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > tol * s(0) ? 1 : 0;
  return rank;
}

ControllabilityData controllability_index(const LinearGaussianDynamics& dyn, double tol) {
  const auto n = static_cast<std::size_t>(dyn.state_dim());
  ControllabilityData data;
  data.tolerance = tol;
  // Cayley-Hamilton: rank(C_ell) is constant for ell >= n - 1.
  for (std::size_t ell = 0; ell < n; ++ell) {
    data.ell = ell;
    data.matrix = controllability_matrix(dyn, ell);
    data.rank = numerical_rank(data.matrix, tol);
    if (data.rank == n) return data;
  }
  throw NotControllable("controllability matrix has rank " + std::to_string(data.rank) + " < " + std::to_string(n));
}

GaussianDensity ell_step_marginal(const LinearGaussianDynamics& dyn, const Eigen::VectorXd& x_start, std::size_t ell) {
  Eigen::VectorXd mean = x_start;
  for (std::size_t j = 0; j <= ell; ++j) mean = dyn.A() * mean;
  const Eigen::MatrixXd c = controllability_matrix(dyn, ell);
  return GaussianDensity(std::move(mean), c * c.transpose());
}

GaussianBridge::GaussianBridge(const LinearGaussianDynamics& dyn, std::size_t length)
    : dyn_(dyn), length_(length), first_(dyn.process_noise()) {
  precompute();
}

GaussianBridge::GaussianBridge(const LinearGaussianDynamics& dyn, std::size_t length, const Eigen::MatrixXd& first_cov)
    : dyn_(dyn), length_(length), first_(first_cov) {
  if (first_cov.rows() != dyn.state_dim()) throw std::invalid_argument("GaussianBridge: first_cov dimension mismatch");
  precompute();
}

void GaussianBridge::precompute() {
  if (length_ == 0) throw std::invalid_argument("GaussianBridge: empty window");
  const Eigen::MatrixXd& a = dyn_.A();
  const Eigen::MatrixXd& q = dyn_.process_noise().covariance();
  powers_.assign(length_ + 1, Eigen::MatrixXd());
  predicted_.assign(length_ + 1, Eigen::MatrixXd());
  powers_[0] = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  predicted_[0] = first_.covariance();
  for (std::size_t j = 0; j < length_; ++j) {
    powers_[j + 1] = a * powers_[j];
    predicted_[j + 1] = symmetrize(a * predicted_[j] * a.transpose() + q);
  }
  endpoint_ = CovarianceFactor(predicted_[length_]);

  const Eigen::MatrixXd& last = predicted_[length_ - 1];
  terminal_gain_ = last * a.transpose() * endpoint_.pseudo_inverse();
  terminal_ = CovarianceFactor(symmetrize(last - terminal_gain_ * predicted_[length_] * terminal_gain_.transpose()),
                               CovarianceFactor::kDefaultRankTol, CovarianceFactor::kDefaultResidualTol, last.norm());

  backward_gain_.clear();
  backward_.clear();
  for (std::size_t j = 0; j + 1 < length_; ++j) {
    const CovarianceFactor next(predicted_[j + 1]);
    Eigen::MatrixXd gain = predicted_[j] * a.transpose() * next.pseudo_inverse();
    backward_.emplace_back(symmetrize(predicted_[j] - gain * a * predicted_[j]), CovarianceFactor::kDefaultRankTol,
                           CovarianceFactor::kDefaultResidualTol, predicted_[j].norm());
    backward_gain_.push_back(std::move(gain));
  }
  compute_measure_correction();
}

namespace {

double half_log_gram_determinant(const Eigen::MatrixXd& g) {
  if (g.cols() == 0) return 0.0;
  const Eigen::LLT<Eigen::MatrixXd> llt(g.transpose() * g);
  if (llt.info() != Eigen::Success) throw NumericalRankFailure("bridge parametrisation is not injective");
  return Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
}

}  // namespace

void GaussianBridge::compute_measure_correction() {
  const Eigen::Index n = state_dim();
  const auto blocks = static_cast<Eigen::Index>(length_ + 1);
  const Eigen::MatrixXd& a = dyn_.A();
  const CovarianceFactor& noise = dyn_.process_noise();

  // Forward: xi_0 = U_0 u_0, xi_j = A xi_{j-1} + U u_j, endpoint likewise.
  const Eigen::Index q = noise.rank();
  Eigen::MatrixXd forward = Eigen::MatrixXd::Zero(n * blocks, first_.rank() + q * (blocks - 1));
  Eigen::MatrixXd row = Eigen::MatrixXd::Zero(n, forward.cols());
  row.leftCols(first_.rank()) = first_.basis();
  forward.topRows(n) = row;
  for (Eigen::Index j = 1; j < blocks; ++j) {
    row = a * row;
    row.middleCols(first_.rank() + (j - 1) * q, q) += noise.basis();
    forward.middleRows(j * n, n) = row;
  }

  // Backward: endpoint = E u_e, xi_{L-1} = K endpoint + B_T u_T, xi_j = G_j xi_{j+1} + B_j u_j.
  Eigen::Index cols = endpoint_.rank() + terminal_.rank();
  for (const auto& f : backward_) cols += f.rank();
  Eigen::MatrixXd backward = Eigen::MatrixXd::Zero(n * blocks, cols);
  Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n, cols);
  next.leftCols(endpoint_.rank()) = endpoint_.basis();
  backward.middleRows(static_cast<Eigen::Index>(length_) * n, n) = next;
  Eigen::Index offset = endpoint_.rank();
  next = terminal_gain_ * next;
  next.middleCols(offset, terminal_.rank()) += terminal_.basis();
  offset += terminal_.rank();
  backward.middleRows(static_cast<Eigen::Index>(length_ - 1) * n, n) = next;
  for (std::size_t j = length_ - 1; j-- > 0;) {
    next = backward_gain_[j] * next;
    next.middleCols(offset, backward_[j].rank()) += backward_[j].basis();
    offset += backward_[j].rank();
    backward.middleRows(static_cast<Eigen::Index>(j) * n, n) = next;
  }

  if (forward.cols() != backward.cols()) {
    throw NumericalRankFailure("bridge factor ranks disagree with the forward path (" +
                               std::to_string(forward.cols()) + " vs " + std::to_string(backward.cols()) + ")");
  }
  log_correction_ = half_log_gram_determinant(forward) - half_log_gram_determinant(backward);
}

double GaussianBridge::log_endpoint_density(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                                            const Eigen::Ref<const Eigen::VectorXd>& endpoint) const {
  return endpoint_.log_density(powers_[length_] * first_mean, endpoint);
}

bool GaussianBridge::reachable(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                               const Eigen::Ref<const Eigen::VectorXd>& endpoint) const {
  const Eigen::VectorXd endpoint_mean = powers_[length_] * first_mean;
  return endpoint_.in_support(endpoint - endpoint_mean, endpoint.norm() + endpoint_mean.norm());
}

void GaussianBridge::sample(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                            const Eigen::Ref<const Eigen::VectorXd>& endpoint, RandomSource& rng,
                            Trajectory& window) const {
  if (window.length() != length_ || static_cast<Eigen::Index>(window.dim()) != state_dim()) {
    throw std::invalid_argument("GaussianBridge::sample: window shape mismatch");
  }
  const Eigen::VectorXd endpoint_mean = powers_[length_] * first_mean;
  const Eigen::VectorXd innovation = endpoint - endpoint_mean;
  if (!endpoint_.in_support(innovation, endpoint.norm() + endpoint_mean.norm())) {
    throw NumericalRankFailure("bridge endpoint is not reachable from the start state");
  }
  const std::size_t last = length_ - 1;
  Eigen::VectorXd mean = powers_[last] * first_mean + terminal_gain_ * innovation;
  terminal_.sample(mean, rng, as_vector(window.at(last)));
  for (std::size_t j = last; j-- > 0;) {
    const Eigen::VectorXd m_j = powers_[j] * first_mean;
    mean = m_j + backward_gain_[j] * (as_vector(window.at(j + 1)) - dyn_.A() * m_j);
    backward_[j].sample(mean, rng, as_vector(window.at(j)));
  }
}

void GaussianBridge::sample_forward(const Eigen::Ref<const Eigen::VectorXd>& first_mean, RandomSource& rng,
                                    Trajectory& window) const {
  if (window.length() != length_ || static_cast<Eigen::Index>(window.dim()) != state_dim()) {
    throw std::invalid_argument("GaussianBridge::sample_forward: window shape mismatch");
  }
  first_.sample(first_mean, rng, as_vector(window.at(0)));
  for (std::size_t j = 1; j < length_; ++j) dyn_.step(as_vector(window.at(j - 1)), rng, as_vector(window.at(j)));
}

double GaussianBridge::log_density(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                                   const Eigen::Ref<const Eigen::VectorXd>& endpoint, const Trajectory& window) const {
  const std::size_t last = length_ - 1;
  const Eigen::VectorXd innovation = endpoint - powers_[length_] * first_mean;
  const Eigen::VectorXd terminal_mean = powers_[last] * first_mean + terminal_gain_ * innovation;
  double total = terminal_.log_density(terminal_mean, as_vector(window.at(last)));
  for (std::size_t j = last; j-- > 0 && total != -INFINITY;) {
    const Eigen::VectorXd m_j = powers_[j] * first_mean;
    const Eigen::VectorXd mean = m_j + backward_gain_[j] * (as_vector(window.at(j + 1)) - dyn_.A() * m_j);
    total += backward_[j].log_density(mean, as_vector(window.at(j)));
  }
  return total + log_correction_;
}

double GaussianBridge::log_forward_density(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                                           const Trajectory& window) const {
  double total = first_.log_density(first_mean, as_vector(window.at(0)));
  for (std::size_t j = 1; j < length_ && total != -INFINITY; ++j) {
    total += dyn_.log_transition(as_vector(window.at(j - 1)), as_vector(window.at(j)));
  }
  return total;
}

double GaussianBridge::log_joint_density(const Eigen::Ref<const Eigen::VectorXd>& first_mean,
                                         const Eigen::Ref<const Eigen::VectorXd>& endpoint,
                                         const Trajectory& window) const {
  const double path = log_forward_density(first_mean, window);
  if (path == -INFINITY) return path;
  return path + dyn_.log_transition(as_vector(window.at(length_ - 1)), endpoint);
}

Trajectory kalman_bridge_sample(const LinearGaussianDynamics& dyn, const Eigen::VectorXd& x_start,
                                const Eigen::VectorXd& x_end, std::size_t ell, RandomSource& rng) {
  const GaussianBridge bridge(dyn, ell);
  Trajectory window(ell, static_cast<std::size_t>(dyn.state_dim()));
  bridge.sample(bridge.first_mean_after(x_start), x_end, rng, window);
  return window;
}

}  // namespace pgas
