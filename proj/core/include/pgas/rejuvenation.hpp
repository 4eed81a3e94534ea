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

#include "pgas/gaussian_bridge.hpp"
#include "pgas/particle_system.hpp"
#include "pgas/random.hpp"
#include "pgas/target.hpp"

namespace pgas {

/// Window selector Xi_t = x_{t:kappa_t}, kappa_t = min(T-1, t+ell-1) (0-based).
class RejuvenationPlan {
 public:
  RejuvenationPlan(std::size_t window_length, std::size_t horizon);

  std::size_t window_length() const { return ell_; }
  std::size_t horizon() const { return horizon_; }
  /// kappa_t. Throws PlanOutOfRange for t >= T.
  std::size_t last(std::size_t t) const;
  /// True when kappa_t + 1 < T, i.e. the window is followed by a retained reference state.
  bool has_endpoint(std::size_t t) const { return last(t) + 1 < horizon_; }

 private:
  std::size_t ell_;
  std::size_t horizon_;
};

/// Everything a rejuvenation kernel at time t may look at: the weighted
/// particles of column t-1 (absent at t = 0), the reference trajectory
/// (whose rows t..kappa are the current window) and the target.
class RejuvenationContext {
 public:
  /// `particles` is N; it must match `system` when one is given.
  RejuvenationContext(const TargetSequence& target, const Trajectory& reference, std::size_t t, std::size_t last,
                      const ParticleSystem* system, std::size_t particles);

  const TargetSequence& target() const { return target_; }
  const Trajectory& reference() const { return reference_; }
  std::size_t time() const { return t_; }
  std::size_t last() const { return last_; }
  std::size_t window_length() const { return last_ - t_ + 1; }
  bool has_ancestors() const { return system_ != nullptr; }
  bool has_endpoint() const { return last_ + 1 < reference_.length(); }
  /// x'_{kappa+1}; only valid when has_endpoint().
  ConstState endpoint() const { return reference_.at(last_ + 1); }

  std::size_t num_particles() const { return particles_; }
  ConstState previous(std::size_t a) const { return system_->state(t_ - 1, a); }
  double previous_log_weight(std::size_t a) const { return system_->log_weight(t_ - 1, a); }
  std::span<const double> previous_log_weights() const { return system_->log_weights(t_ - 1); }

  /// log w_{t-1}^a + sum_{s=t}^{kappa} log gamma increments over the window
  /// + the increment into x'_{kappa+1}: the partially collapsed conditional of
  /// (a, Xi) up to a constant. At t = 0 the ancestor is ignored. Evaluation
  /// failures surface as -inf.
  double log_target(std::size_t a, const Trajectory& window) const;

  /// Rows t..kappa of the reference.
  Trajectory current_window() const;

 private:
  const TargetSequence& target_;
  const Trajectory& reference_;
  std::size_t t_;
  std::size_t last_;
  const ParticleSystem* system_;
  std::size_t particles_;
};

/// Proposal q(Xi | x_{t-1}^a, retained future) for a window.
class WindowProposal {
 public:
  virtual ~WindowProposal() = default;

  /// True when the draw also depends on the current window (random-walk type).
  /// Such proposals are admissible for the MH kernel only.
  virtual bool depends_on_current() const { return false; }

  /// Draws into `out` (window_length x dim). Returns false when q(. | a) has no
  /// mass that can reach the retained future; the pair then has target 0.
  virtual bool sample(const RejuvenationContext& ctx, std::size_t a, const Trajectory& current, RandomSource& rng,
                      Trajectory& out) const = 0;
  virtual double log_density(const RejuvenationContext& ctx, std::size_t a, const Trajectory& current,
                             const Trajectory& window) const = 0;

  /// log [pi(a, Xi) / (w^a q(Xi | a))], with pi = ctx.log_target. Only
  /// meaningful for proposals that ignore the current window. Subclasses
  /// override this where the ratio simplifies analytically.
  virtual double log_target_over_proposal(const RejuvenationContext& ctx, std::size_t a,
                                          const Trajectory& window) const;
};

/// Xi drawn forward through the target's own proposals r_s.
class PriorWindowProposal final : public WindowProposal {
 public:
  bool sample(const RejuvenationContext& ctx, std::size_t a, const Trajectory& current, RandomSource& rng,
              Trajectory& out) const override;
  double log_density(const RejuvenationContext& ctx, std::size_t a, const Trajectory& current,
                     const Trajectory& window) const override;
  double log_target_over_proposal(const RejuvenationContext& ctx, std::size_t a,
                                  const Trajectory& window) const override;
};

/// Xi = current + scale * z, z ~ N(0, I). Symmetric.
class RandomWalkWindowProposal final : public WindowProposal {
 public:
  explicit RandomWalkWindowProposal(double scale);

  bool depends_on_current() const override { return true; }
  bool sample(const RejuvenationContext& ctx, std::size_t a, const Trajectory& current, RandomSource& rng,
              Trajectory& out) const override;
  double log_density(const RejuvenationContext& ctx, std::size_t a, const Trajectory& current,
                     const Trajectory& window) const override;

 private:
  double scale_;
};

/// Endpoint-conditioned Gaussian bridge p(Xi | x_{t-1}^a, x'_{kappa+1}) for a
/// model with linear-Gaussian dynamics `dyn` and initial law N(m0, P0), and a
/// forward draw from the dynamics when the window reaches the horizon. The
/// target must be SsmTarget over a model whose transition is `dyn` and whose
/// initial law is N(m0, P0); the weight then reduces to
///   sum_s log g(y_s | xi_s) + log N(x'_{kappa+1}; A^{ell+1} x_{t-1}^a, C_ell C_ell^T).
class GaussianBridgeProposal final : public WindowProposal {
 public:
  GaussianBridgeProposal(const SsmTarget& target, const LinearGaussianDynamics& dyn, Eigen::VectorXd initial_mean,
                         const Eigen::MatrixXd& initial_cov, std::size_t max_length);

  bool sample(const RejuvenationContext& ctx, std::size_t a, const Trajectory& current, RandomSource& rng,
              Trajectory& out) const override;
  double log_density(const RejuvenationContext& ctx, std::size_t a, const Trajectory& current,
                     const Trajectory& window) const override;
  double log_target_over_proposal(const RejuvenationContext& ctx, std::size_t a,
                                  const Trajectory& window) const override;

  /// Bridge for a window of `length` states that follows a known state
  /// (`from_prior` false) or starts at t = 0.
  const GaussianBridge& bridge(std::size_t length, bool from_prior) const;

 private:
  Eigen::VectorXd first_mean(const RejuvenationContext& ctx, std::size_t a) const;
  double log_observations(const RejuvenationContext& ctx, const Trajectory& window) const;

  const SsmTarget& target_;
  Eigen::VectorXd initial_mean_;
  std::vector<GaussianBridge> after_state_;  // index length - 1
  std::vector<GaussianBridge> after_prior_;
};

enum class AncestorProposal { FilterWeights, Uniform };

/// Current value of the (ancestor, window) pair updated by a kernel.
struct KernelState {
  std::size_t ancestor = 0;
  Trajectory window;
};

/// Markov kernel on (a_t^N, Xi_t) leaving the partially collapsed conditional
/// invariant.
class RejuvenationKernel {
 public:
  virtual ~RejuvenationKernel() = default;
  /// Updates `state` in place; returns true if the pair changed.
  virtual bool step(const RejuvenationContext& ctx, KernelState& state, RandomSource& rng) const = 0;
};

class IdentityKernel final : public RejuvenationKernel {
 public:
  bool step(const RejuvenationContext&, KernelState&, RandomSource&) const override { return false; }
};

/// Conditional importance sampling: the current pair plus inner - 1 fresh
/// pairs (a ~ nu, Xi ~ q(. | a)), one of them selected by importance weight.
/// inner = 0 means N.
class CisKernel final : public RejuvenationKernel {
 public:
  CisKernel(const WindowProposal& proposal, AncestorProposal nu = AncestorProposal::FilterWeights,
            std::size_t inner = 0);

  bool step(const RejuvenationContext& ctx, KernelState& state, RandomSource& rng) const override;

 private:
  const WindowProposal& proposal_;
  AncestorProposal nu_;
  std::size_t inner_;
};

/// Metropolis-Hastings with proposal a* ~ nu, Xi* ~ q(. | a*, current),
/// repeated `iterations` times.
class MhKernel final : public RejuvenationKernel {
 public:
  MhKernel(const WindowProposal& proposal, AncestorProposal nu = AncestorProposal::FilterWeights,
           std::size_t iterations = 1);

  bool step(const RejuvenationContext& ctx, KernelState& state, RandomSource& rng) const override;

 private:
  const WindowProposal& proposal_;
  AncestorProposal nu_;
  std::size_t iterations_;
};

/// log nu^i over column t-1, normalised.
std::vector<double> ancestor_proposal_logweights(const RejuvenationContext& ctx, AncestorProposal nu);

}  // namespace pgas
