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

#include "pgas/rejuvenation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "pgas/errors.hpp"
#include "pgas/log_weights.hpp"

namespace pgas {

RejuvenationPlan::RejuvenationPlan(std::size_t window_length, std::size_t horizon)
    : ell_(window_length), horizon_(horizon) {
  if (ell_ == 0) throw std::invalid_argument("RejuvenationPlan: window length must be >= 1");
  if (horizon_ == 0) throw std::invalid_argument("RejuvenationPlan: empty horizon");
}

std::size_t RejuvenationPlan::last(std::size_t t) const {
  if (t >= horizon_) throw PlanOutOfRange("window start " + std::to_string(t) + " is past the horizon");
  return std::min(horizon_ - 1, t + ell_ - 1);
}

RejuvenationContext::RejuvenationContext(const TargetSequence& target, const Trajectory& reference, std::size_t t,
                                         std::size_t last, const ParticleSystem* system, std::size_t particles)
    : target_(target), reference_(reference), t_(t), last_(last), system_(system), particles_(particles) {
  if (last_ < t_ || last_ >= reference_.length()) throw PlanOutOfRange("window end outside the reference");
  if ((t_ == 0) != (system_ == nullptr)) throw std::invalid_argument("RejuvenationContext: particles iff t > 0");
  if (system_ && system_->num_particles() != particles_) {
    throw std::invalid_argument("RejuvenationContext: particle count mismatch");
  }
}

double RejuvenationContext::log_target(std::size_t a, const Trajectory& window) const {
  double total = 0.0;
  ConstState prev{};
  if (t_ > 0) {
    total = previous_log_weight(a);
    prev = previous(a);
  }
  for (std::size_t j = 0; j < window.length() && total != -INFINITY; ++j) {
    total += target_.log_gamma_increment(t_ + j, prev, window.at(j));
    prev = window.at(j);
  }
  if (has_endpoint() && total != -INFINITY) total += target_.log_gamma_increment(last_ + 1, prev, endpoint());
  return std::isnan(total) ? -INFINITY : total;
}

Trajectory RejuvenationContext::current_window() const {
  Trajectory window(window_length(), reference_.dim());
  for (std::size_t j = 0; j < window.length(); ++j) {
    std::copy_n(reference_.at(t_ + j).begin(), reference_.dim(), window.at(j).begin());
  }
  return window;
}

double WindowProposal::log_target_over_proposal(const RejuvenationContext& ctx, std::size_t a,
                                                const Trajectory& window) const {
  const double pi = ctx.log_target(a, window);
  if (pi == -INFINITY) return pi;
  const double w = ctx.has_ancestors() ? ctx.previous_log_weight(a) : 0.0;
  return pi - w - log_density(ctx, a, window, window);
}

bool PriorWindowProposal::sample(const RejuvenationContext& ctx, std::size_t a, const Trajectory&, RandomSource& rng,
                                 Trajectory& out) const {
  ConstState prev = ctx.has_ancestors() ? ctx.previous(a) : ConstState{};
  for (std::size_t j = 0; j < out.length(); ++j) {
    ctx.target().propose(ctx.time() + j, prev, rng, out.at(j));
    prev = out.at(j);
  }
  return true;
}

double PriorWindowProposal::log_density(const RejuvenationContext& ctx, std::size_t a, const Trajectory&,
                                        const Trajectory& window) const {
  ConstState prev = ctx.has_ancestors() ? ctx.previous(a) : ConstState{};
  double total = 0.0;
  for (std::size_t j = 0; j < window.length() && total != -INFINITY; ++j) {
    total += ctx.target().proposal_logpdf(ctx.time() + j, prev, window.at(j));
    prev = window.at(j);
  }
  return total;
}

double PriorWindowProposal::log_target_over_proposal(const RejuvenationContext& ctx, std::size_t a,
                                                     const Trajectory& window) const {
  ConstState prev = ctx.has_ancestors() ? ctx.previous(a) : ConstState{};
  double total = 0.0;
  for (std::size_t j = 0; j < window.length() && total != -INFINITY; ++j) {
    total += ctx.target().log_weight(ctx.time() + j, prev, window.at(j));
    prev = window.at(j);
  }
  if (ctx.has_endpoint() && total != -INFINITY) {
    total += ctx.target().log_gamma_increment(ctx.last() + 1, prev, ctx.endpoint());
  }
  return std::isnan(total) ? -INFINITY : total;
}

RandomWalkWindowProposal::RandomWalkWindowProposal(double scale) : scale_(scale) {
  if (!(scale_ > 0.0)) throw std::invalid_argument("RandomWalkWindowProposal: scale must be > 0");
}

bool RandomWalkWindowProposal::sample(const RejuvenationContext&, std::size_t, const Trajectory& current,
                                      RandomSource& rng, Trajectory& out) const {
  auto src = current.data();
  auto dst = out.data();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = src[k] + scale_ * rng.normal();
  return true;
}

double RandomWalkWindowProposal::log_density(const RejuvenationContext&, std::size_t, const Trajectory& current,
                                             const Trajectory& window) const {
  auto from = current.data();
  auto to = window.data();
  double total = 0.0;
  for (std::size_t k = 0; k < to.size(); ++k) {
    const double z = (to[k] - from[k]) / scale_;
    total += -0.5 * z * z - std::log(scale_) - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  return total;
}

GaussianBridgeProposal::GaussianBridgeProposal(const SsmTarget& target, const LinearGaussianDynamics& dyn,
                                               Eigen::VectorXd initial_mean, const Eigen::MatrixXd& initial_cov,
                                               std::size_t max_length)
    : target_(target), initial_mean_(std::move(initial_mean)) {
  if (max_length == 0) throw std::invalid_argument("GaussianBridgeProposal: max_length must be >= 1");
  if (static_cast<std::size_t>(dyn.state_dim()) != target.state_dim()) {
    throw std::invalid_argument("GaussianBridgeProposal: dynamics do not match the target");
  }
  for (std::size_t length = 1; length <= max_length; ++length) {
    after_state_.emplace_back(dyn, length);
    after_prior_.emplace_back(dyn, length, initial_cov);
  }
}

const GaussianBridge& GaussianBridgeProposal::bridge(std::size_t length, bool from_prior) const {
  if (length == 0 || length > after_state_.size()) throw PlanOutOfRange("window longer than the bridge cache");
  return from_prior ? after_prior_[length - 1] : after_state_[length - 1];
}

Eigen::VectorXd GaussianBridgeProposal::first_mean(const RejuvenationContext& ctx, std::size_t a) const {
  if (!ctx.has_ancestors()) return initial_mean_;
  return bridge(ctx.window_length(), false).first_mean_after(as_vector(ctx.previous(a)));
}

double GaussianBridgeProposal::log_observations(const RejuvenationContext& ctx, const Trajectory& window) const {
  const StateSpaceModel& model = target_.model();
  double total = 0.0;
  for (std::size_t j = 0; j < window.length(); ++j) {
    total += model.log_observation(ctx.time() + j, window.at(j), target_.observations().at(ctx.time() + j));
  }
  return total;
}

bool GaussianBridgeProposal::sample(const RejuvenationContext& ctx, std::size_t a, const Trajectory&,
                                    RandomSource& rng, Trajectory& out) const {
  const GaussianBridge& b = bridge(ctx.window_length(), !ctx.has_ancestors());
  const Eigen::VectorXd mean = first_mean(ctx, a);
  if (!ctx.has_endpoint()) {
    b.sample_forward(mean, rng, out);
    return true;
  }
  const auto endpoint = as_vector(ctx.endpoint());
  if (!b.reachable(mean, endpoint)) return false;
  b.sample(mean, endpoint, rng, out);
  return true;
}

double GaussianBridgeProposal::log_density(const RejuvenationContext& ctx, std::size_t a, const Trajectory&,
                                           const Trajectory& window) const {
  const GaussianBridge& b = bridge(ctx.window_length(), !ctx.has_ancestors());
  const Eigen::VectorXd mean = first_mean(ctx, a);
  if (!ctx.has_endpoint()) return b.log_forward_density(mean, window);
  return b.log_density(mean, as_vector(ctx.endpoint()), window);
}

double GaussianBridgeProposal::log_target_over_proposal(const RejuvenationContext& ctx, std::size_t a,
                                                        const Trajectory& window) const {
  const double obs = log_observations(ctx, window);
  if (!ctx.has_endpoint()) return obs;
  const GaussianBridge& b = bridge(ctx.window_length(), !ctx.has_ancestors());
  const double marginal = b.log_endpoint_density(first_mean(ctx, a), as_vector(ctx.endpoint()));
  return marginal == -INFINITY ? marginal : obs + marginal;
}

std::vector<double> ancestor_proposal_logweights(const RejuvenationContext& ctx, AncestorProposal nu) {
  const std::size_t n = ctx.num_particles();
  if (nu == AncestorProposal::Uniform) return std::vector<double>(n, -std::log(static_cast<double>(n)));
  const auto w = ctx.previous_log_weights();
  const double total = log_sum_exp(w);
  if (total == -INFINITY) throw AllWeightsDegenerate("ancestor proposal");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = w[i] - total;
  return out;
}

namespace {

/// Draws from nu, either through the cumulative table or uniformly.
class AncestorDraw {
 public:
  AncestorDraw(const std::vector<double>& log_nu, AncestorProposal nu) : n_(log_nu.size()) {
    if (nu == AncestorProposal::FilterWeights) sampler_.emplace(log_nu);
  }
  std::size_t operator()(RandomSource& rng) const {
    if (sampler_) return sampler_->draw(rng);
    return std::min(n_ - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n_)));
  }

 private:
  std::size_t n_;
  std::optional<CategoricalSampler> sampler_;
};

/// log w^a - log nu^a + log pi/(w q), or just the ratio at t = 0.
double importance_logweight(const RejuvenationContext& ctx, const WindowProposal& proposal,
                            const std::vector<double>& log_nu, std::size_t a, const Trajectory& window) {
  const double ratio = proposal.log_target_over_proposal(ctx, a, window);
  if (!ctx.has_ancestors() || ratio == -INFINITY) return ratio;
  const double w = ctx.previous_log_weight(a);
  if (w == -INFINITY) return -INFINITY;
  return w - log_nu[a] + ratio;
}

}  // namespace

CisKernel::CisKernel(const WindowProposal& proposal, AncestorProposal nu, std::size_t inner)
    : proposal_(proposal), nu_(nu), inner_(inner) {
  if (proposal.depends_on_current()) throw std::invalid_argument("CisKernel needs a proposal independent of the current window");
}

bool CisKernel::step(const RejuvenationContext& ctx, KernelState& state, RandomSource& rng) const {
  const std::size_t m = inner_ == 0 ? std::max<std::size_t>(ctx.num_particles(), 1) : inner_;
  if (m <= 1) return false;
  const std::vector<double> log_nu =
      ctx.has_ancestors() ? ancestor_proposal_logweights(ctx, nu_) : std::vector<double>{};
  std::optional<AncestorDraw> draw_ancestor;
  if (ctx.has_ancestors()) draw_ancestor.emplace(log_nu, nu_);

  std::vector<std::size_t> ancestors(m);
  std::vector<Trajectory> windows(m - 1, Trajectory(state.window.length(), state.window.dim()));
  std::vector<double> log_w(m);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    ancestors[j] = draw_ancestor ? (*draw_ancestor)(rng) : state.ancestor;
    const bool ok = proposal_.sample(ctx, ancestors[j], state.window, rng, windows[j]);
    log_w[j] = ok ? importance_logweight(ctx, proposal_, log_nu, ancestors[j], windows[j]) : -INFINITY;
  }
  ancestors[m - 1] = state.ancestor;
  log_w[m - 1] = importance_logweight(ctx, proposal_, log_nu, state.ancestor, state.window);
  if (log_w[m - 1] == -INFINITY) throw std::logic_error("CisKernel: current pair has zero weight");

  const std::size_t pick = categorical_draw(normalize_log_weights(log_w), rng);
  if (pick == m - 1) return false;
  state.ancestor = ancestors[pick];
  state.window = std::move(windows[pick]);
  return true;
}

MhKernel::MhKernel(const WindowProposal& proposal, AncestorProposal nu, std::size_t iterations)
    : proposal_(proposal), nu_(nu), iterations_(iterations) {}

bool MhKernel::step(const RejuvenationContext& ctx, KernelState& state, RandomSource& rng) const {
  const std::vector<double> log_nu =
      ctx.has_ancestors() ? ancestor_proposal_logweights(ctx, nu_) : std::vector<double>{};
  std::optional<AncestorDraw> draw_ancestor;
  if (ctx.has_ancestors()) draw_ancestor.emplace(log_nu, nu_);
  const bool dependent = proposal_.depends_on_current();

  bool moved = false;
  Trajectory candidate(state.window.length(), state.window.dim());
  double current_iw = dependent ? 0.0 : importance_logweight(ctx, proposal_, log_nu, state.ancestor, state.window);
  for (std::size_t it = 0; it < iterations_; ++it) {
    const std::size_t a = draw_ancestor ? (*draw_ancestor)(rng) : state.ancestor;
    if (!proposal_.sample(ctx, a, state.window, rng, candidate)) {
      rng.uniform();
      continue;
    }
    double log_alpha;
    double candidate_iw = 0.0;
    if (dependent) {
      const double forward = proposal_.log_density(ctx, a, state.window, candidate);
      const double backward = proposal_.log_density(ctx, state.ancestor, candidate, state.window);
      log_alpha = ctx.log_target(a, candidate) - ctx.log_target(state.ancestor, state.window) + backward - forward;
      if (ctx.has_ancestors()) log_alpha += log_nu[state.ancestor] - log_nu[a];
    } else {
      candidate_iw = importance_logweight(ctx, proposal_, log_nu, a, candidate);
      log_alpha = candidate_iw - current_iw;
    }
    const double u = rng.uniform();
    if (std::isnan(log_alpha) || log_alpha == -INFINITY) continue;
    if (log_alpha >= 0.0 || std::log(u) < log_alpha) {
      moved = moved || a != state.ancestor || !(candidate == state.window);
      state.ancestor = a;
      std::swap(state.window, candidate);
      current_iw = candidate_iw;
    }
  }
  return moved;
}

}  // namespace pgas
