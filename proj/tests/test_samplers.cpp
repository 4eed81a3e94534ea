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
#include <functional>
#include <numbers>

#include "pgas/diagnostics.hpp"
#include "pgas/errors.hpp"
#include "pgas/gibbs.hpp"
#include "pgas/kalman.hpp"
#include "pgas/log_weights.hpp"
#include "pgas/models/autoregressive.hpp"
#include "pgas/models/finite_state.hpp"
#include "pgas/models/linear_gaussian.hpp"
#include "pgas/models/lorenz63.hpp"
#include "pgas/models/simulate.hpp"
#include "pgas/rejuvenation.hpp"
#include "pgas/samplers.hpp"
#include "test_support.hpp"

namespace pgas {
namespace {

using Sweep = std::function<Trajectory(const Trajectory&, RandomSource&)>;

// Pearson's test needs independent draws; every `thin`-th state is kept.
std::vector<std::size_t> path_counts(const Sweep& sweep, Trajectory reference, std::size_t draws, std::size_t thin,
                                     std::size_t cells, RandomSource& rng) {
  std::vector<std::size_t> counts(cells, 0);
  for (std::size_t it = 0; it < draws; ++it) {
    for (std::size_t k = 0; k < thin; ++k) reference = sweep(reference, rng);
    ++counts[path_index(reference, 2)];
  }
  return counts;
}

struct Toy {
  FiniteStateModel model{two_state_toy()};
  Trajectory y = testing::scalar_series({0.0, 1.0});
  SsmTarget target{model, y};
  Trajectory start = testing::scalar_series({0.0, 0.0});
  std::vector<double> exact = enumerate_smoothing(model, y);
};

TEST(ConditionalSmc, RejectsSingleParticle) {
  Toy toy;
  RandomSource rng(1);
  EXPECT_THROW(pg_sweep(toy.start, toy.target, 1, rng), std::invalid_argument);
  EXPECT_THROW(pgas_sweep(toy.start, toy.target, 0, rng), std::invalid_argument);
}

TEST(ConditionalSmc, RejectsMismatchedReference) {
  Toy toy;
  RandomSource rng(1);
  EXPECT_THROW(pg_sweep(testing::scalar_series({0.0}), toy.target, 2, rng), std::invalid_argument);
}

TEST(AncestorSampling, EqualWeightsFlatTransitionAreUniform) {
  FiniteStateSpec spec = two_state_toy();
  spec.transition = {{0.5, 0.5}, {0.5, 0.5}};
  const FiniteStateModel model(spec);
  const Trajectory y = testing::scalar_series({0.0, 1.0});
  const SsmTarget target(model, y);
  ParticleSystem system(4, 2, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    system.state(0, i)[0] = static_cast<double>(i % 2);
    system.log_weight(0, i) = -1.0;
  }
  const auto log_w = ancestor_sampling_logweights(system, 1, testing::scalar_series({0, 1}), target);
  const auto probs = normalize_log_weights(log_w);
  for (double p : probs) EXPECT_NEAR(p, 0.25, 1e-15);
}

TEST(AncestorSampling, DegenerateTransitionKeepsOnlyReferenceHistory) {
  const ArModel model(ArSsmSpec{});
  RandomSource rng(3);
  const auto data = simulate_data(model, 30, rng);
  const SsmTarget target(model, data.observations);
  ParticleSystem workspace(10, 30, 5);
  SweepOptions options;
  options.workspace = &workspace;
  const SweepRecord record = pg_sweep(data.states, target, 10, rng, options);
  for (std::size_t t = 1; t < 30; ++t) {
    const auto log_w = ancestor_sampling_logweights(workspace, t, record.reference, target);
    for (std::size_t i = 0; i + 1 < 10; ++i) EXPECT_EQ(log_w[i], -INFINITY) << "t=" << t << " i=" << i;
    EXPECT_TRUE(std::isfinite(log_w[9]));
  }
}

TEST(AncestorSampling, ScalarLgssmHandCheck) {
  const double a = 0.8, q = 0.5;
  const LinearGaussianModel model(scalar_lgssm(a, q, 1.0));
  const Trajectory y = testing::scalar_series({0.0, 0.0});
  const SsmTarget target(model, y);
  ParticleSystem system(3, 2, 1);
  const double x[3] = {-1.0, 0.2, 1.5}, w[3] = {-0.3, -2.0, -1.1};
  for (std::size_t i = 0; i < 3; ++i) {
    system.state(0, i)[0] = x[i];
    system.log_weight(0, i) = w[i];
  }
  const Trajectory reference = testing::scalar_series({0.0, 0.7});
  const auto log_w = ancestor_sampling_logweights(system, 1, reference, target);
  std::vector<double> hand(3);
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double z = (0.7 - a * x[i]) / q;
    hand[i] = std::exp(w[i]) * std::exp(-0.5 * z * z) / (q * std::sqrt(2.0 * std::numbers::pi));
    total += hand[i];
  }
  const auto probs = normalize_log_weights(log_w);
  // The increment also carries log g(y_1 | x'_1), common to every i.
  const double log_g = -0.5 * 0.7 * 0.7 - 0.5 * std::log(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(log_w[i], std::log(hand[i]) + log_g, 1e-12);
    EXPECT_NEAR(probs[i], hand[i] / total, 1e-14);
  }
}

TEST(AncestorSampling, IntractableTransitionSurfaces) {
  const Lorenz63Model model(Lorenz63Spec{});
  RandomSource rng(2);
  const auto data = simulate_data(model, 5, rng);
  const SsmTarget target(model, data.observations);
  EXPECT_THROW(pgas_sweep(data.states, target, 5, rng), IntractableTransition);
  ParticleSystem system(2, 5, 3);
  EXPECT_THROW(ancestor_sampling_logweights(system, 1, data.states, target), IntractableTransition);
}

class SeedMatched : public ::testing::Test {
 protected:
  void expect_same_as_pg(const std::function<SweepRecord(const Trajectory&, RandomSource&)>& sweep,
                         const SsmTarget& target, const Trajectory& start, std::size_t n) {
    RandomSource a(99), b(99);
    Trajectory ra = start, rb = start;
    for (int it = 0; it < 50; ++it) {
      ra = pg_sweep(ra, target, n, a).trajectory;
      const SweepRecord rec = sweep(rb, b);
      rb = rec.trajectory;
      ASSERT_EQ(ra, rb) << "iteration " << it;
      for (std::uint8_t c : rec.ancestor_changed) EXPECT_EQ(c, 0);
    }
  }
};

TEST_F(SeedMatched, IdentityKernelIsPg) {
  const LinearGaussianModel model(scalar_lgssm(0.9, 1.0, 1.0));
  RandomSource rng(1);
  const auto data = simulate_data(model, 15, rng);
  const SsmTarget target(model, data.observations);
  const RejuvenationPlan plan(3, 15);
  const IdentityKernel kernel;
  expect_same_as_pg([&](const Trajectory& r, RandomSource& g) { return pgas_rejuvenated_sweep(r, target, 6, plan, kernel, g); },
                    target, data.states, 6);
}

TEST_F(SeedMatched, CisWithOneInnerDrawIsPg) {
  const LinearGaussianModel model(scalar_lgssm(0.9, 1.0, 1.0));
  RandomSource rng(1);
  const auto data = simulate_data(model, 15, rng);
  const SsmTarget target(model, data.observations);
  const RejuvenationPlan plan(2, 15);
  const PriorWindowProposal proposal;
  const CisKernel kernel(proposal, AncestorProposal::FilterWeights, 1);
  expect_same_as_pg([&](const Trajectory& r, RandomSource& g) { return pgas_rejuvenated_sweep(r, target, 6, plan, kernel, g); },
                    target, data.states, 6);
}

TEST_F(SeedMatched, PgasOnDegenerateModelIsPg) {
  const ArModel model(ArSsmSpec{});
  RandomSource rng(1);
  const auto data = simulate_data(model, 40, rng);
  const SsmTarget target(model, data.observations);
  expect_same_as_pg([&](const Trajectory& r, RandomSource& g) { return pgas_sweep(r, target, 8, g); }, target,
                    data.states, 8);
}

TEST(ConditionalSmc, ReferenceOccupiesLastSlot) {
  const LinearGaussianModel model(scalar_lgssm(0.9, 1.0, 1.0));
  RandomSource rng(4);
  const auto data = simulate_data(model, 12, rng);
  const SsmTarget target(model, data.observations);
  const RejuvenationPlan plan(2, 12);
  const PriorWindowProposal proposal;
  const CisKernel kernel(proposal);
  ParticleSystem workspace(5, 12, 1);
  SweepOptions options;
  options.workspace = &workspace;
  Trajectory reference = data.states;
  for (int it = 0; it < 20; ++it) {
    const SweepRecord rec = pgas_rejuvenated_sweep(reference, target, 5, plan, kernel, rng, options);
    for (std::size_t t = 0; t < 12; ++t) EXPECT_EQ(workspace.state(t, 4)[0], rec.reference(t, 0));
    reference = rec.trajectory;
  }
}

TEST(ConditionalSmc, PgNeverChangesAncestry) {
  Toy toy;
  RandomSource rng(5);
  Trajectory reference = toy.start;
  for (int it = 0; it < 100; ++it) {
    const SweepRecord rec = pg_sweep(reference, toy.target, 3, rng);
    for (std::uint8_t c : rec.ancestor_changed) EXPECT_EQ(c, 0);
    reference = rec.trajectory;
  }
}

TEST(StationaryLaw, VariantsMatchEnumerationOnToy) {
  Toy toy;
  const RejuvenationPlan plan(1, 2);
  const PriorWindowProposal prior;
  const CisKernel cis(prior);
  const MhKernel mh(prior);
  std::vector<std::pair<std::string, Sweep>> variants = {
      {"pg", [&](const Trajectory& r, RandomSource& g) { return pg_sweep(r, toy.target, 2, g).trajectory; }},
      {"pgas", [&](const Trajectory& r, RandomSource& g) { return pgas_sweep(r, toy.target, 2, g).trajectory; }},
      {"cis", [&](const Trajectory& r, RandomSource& g) {
         return pgas_rejuvenated_sweep(r, toy.target, 2, plan, cis, g).trajectory;
       }},
      {"mh", [&](const Trajectory& r, RandomSource& g) {
         return pgas_rejuvenated_sweep(r, toy.target, 2, plan, mh, g).trajectory;
       }},
  };
  for (const auto& [name, sweep] : variants) {
    RandomSource rng(17);
    const auto counts = path_counts(sweep, toy.start, 20000, 50, 4, rng);
    EXPECT_GT(testing::chi_square_p_value(counts, toy.exact), 0.001) << name;
  }
}

TEST(Pimh, StationaryLawOnToy) {
  Toy toy;
  RandomSource rng(23);
  PimhState state = pimh_initialize(toy.target, 2, rng);
  std::vector<std::size_t> counts(4, 0);
  for (int it = 0; it < 20000; ++it) {
    for (int k = 0; k < 50; ++k) pimh_sweep(state, toy.target, 2, rng);
    ++counts[path_index(state.trajectory, 2)];
  }
  EXPECT_GT(testing::chi_square_p_value(counts, toy.exact), 0.001);
}

TEST(Pimh, LargeNAcceptsAlmostAlways) {
  const LinearGaussianModel model(scalar_lgssm(0.9, 1.0, 1.0));
  RandomSource rng(7);
  const auto data = simulate_data(model, 10, rng);
  const SsmTarget target(model, data.observations);
  PimhState state = pimh_initialize(target, 10000, rng);
  EXPECT_NEAR(state.log_likelihood, kalman_filter(model.spec(), data.observations).log_likelihood, 0.1);
  int accepted = 0;
  const int sweeps = 200;
  for (int it = 0; it < sweeps; ++it) accepted += pimh_sweep(state, target, 10000, rng) ? 1 : 0;
  EXPECT_GT(static_cast<double>(accepted) / sweeps, 0.9);
}

// Deterministic proposal and equal weights: every estimate is identical.
class ConstantTarget final : public TargetSequence {
 public:
  std::size_t horizon() const override { return 5; }
  std::size_t state_dim() const override { return 1; }
  double log_gamma_increment(std::size_t, ConstState, ConstState) const override { return -1.0; }
  void propose(std::size_t t, ConstState, RandomSource&, MutableState out) const override {
    out[0] = static_cast<double>(t);
  }
  double proposal_logpdf(std::size_t, ConstState, ConstState) const override { return 0.0; }
};

TEST(Pimh, DeterministicModelAlwaysAccepts) {
  const ConstantTarget target;
  RandomSource rng(2);
  PimhState state = pimh_initialize(target, 4, rng);
  for (int it = 0; it < 100; ++it) EXPECT_TRUE(pimh_sweep(state, target, 4, rng));
  EXPECT_NEAR(state.log_likelihood, -5.0, 1e-12);
}

TEST(Pg, LargeNMatchesKalmanSmoother) {
  const LinearGaussianModel model(scalar_lgssm(0.9, 1.0, 1.0));
  RandomSource rng(8);
  const std::size_t horizon = 10;
  const auto data = simulate_data(model, horizon, rng);
  const SsmTarget target(model, data.observations);
  const auto smooth = kalman_smoother(model.spec(), data.observations);
  std::vector<std::vector<double>> series(horizon);
  Trajectory reference = data.states;
  for (int it = 0; it < 2200; ++it) {
    reference = pg_sweep(reference, target, 500, rng).trajectory;
    if (it < 200) continue;
    for (std::size_t t = 0; t < horizon; ++t) series[t].push_back(reference(t, 0));
  }
  for (std::size_t t = 0; t < horizon; ++t) {
    EXPECT_NEAR(mean(series[t]), smooth.means[t](0), 3.0 * batch_means_se(series[t])) << "t=" << t;
  }
}

TEST(Gibbs, FixedThetaIsPureStateSampling) {
  Toy toy;
  RandomSource a(31), b(31);
  const auto chain = gibbs_loop(
      toy.start, [](const Trajectory&, RandomSource&) { return 1.0; },
      [&](const Trajectory& x, double, RandomSource& g) { return pgas_sweep(x, toy.target, 2, g).trajectory; }, 200,
      a);
  Trajectory x = toy.start;
  for (std::size_t it = 0; it < 200; ++it) {
    x = pgas_sweep(x, toy.target, 2, b).trajectory;
    EXPECT_EQ(chain.states[it], x);
    EXPECT_EQ(chain.theta[it], 1.0);
  }
}

TEST(Gibbs, InverseGammaScaleMatchesQuadrature) {
  const double a = 0.8, r = 0.5, shape0 = 2.0, scale0 = 1.0;
  RandomSource rng(41);
  const std::size_t horizon = 15;
  const LinearGaussianModel truth(scalar_lgssm(a, std::sqrt(0.5), r));
  const auto data = simulate_data(truth, horizon, rng);

  // Oracle: posterior mean of theta from prior x Kalman likelihood on a grid.
  double z = 0.0, m1 = 0.0;
  const double lo = 1e-3, hi = 15.0;
  const int cells = 30000;
  const double h = (hi - lo) / cells;
  std::vector<double> logp(cells);
  double peak = -INFINITY;
  for (int i = 0; i < cells; ++i) {
    const double theta = lo + (i + 0.5) * h;
    logp[i] = -(shape0 + 1.0) * std::log(theta) - scale0 / theta +
              kalman_filter(scalar_lgssm(a, std::sqrt(theta), r), data.observations).log_likelihood;
    peak = std::max(peak, logp[i]);
  }
  for (int i = 0; i < cells; ++i) {
    const double theta = lo + (i + 0.5) * h;
    const double p = std::exp(logp[i] - peak);
    z += p;
    m1 += p * theta;
  }
  const double oracle = m1 / z;

  auto theta_sampler = [&](const Trajectory& x, RandomSource& g) {
    double ss = 0.0;
    for (std::size_t t = 1; t < horizon; ++t) ss += (x(t, 0) - a * x(t - 1, 0)) * (x(t, 0) - a * x(t - 1, 0));
    return sample_inverse_gamma(shape0 + 0.5 * static_cast<double>(horizon - 1), scale0 + 0.5 * ss, g);
  };
  auto state_sweep = [&](const Trajectory& x, double theta, RandomSource& g) {
    const LinearGaussianModel model(scalar_lgssm(a, std::sqrt(theta), r));
    const SsmTarget target(model, data.observations);
    return pgas_sweep(x, target, 20, g).trajectory;
  };
  const auto chain = gibbs_loop(data.states, theta_sampler, state_sweep, 40000, rng, false);
  const std::vector<double> kept(chain.theta.begin() + 2000, chain.theta.end());
  EXPECT_NEAR(mean(kept), oracle, 3.0 * batch_means_se(kept));
}

TEST(Gibbs, InverseGammaDrawMoments) {
  RandomSource rng(3);
  double s = 0.0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) s += sample_inverse_gamma(5.0, 2.0, rng);
  // Mean scale / (shape - 1), sd mean / sqrt(shape - 2).
  EXPECT_NEAR(s / draws, 0.5, 3.0 * 0.5 / std::sqrt(3.0) / std::sqrt(draws));
  EXPECT_THROW(sample_inverse_gamma(0.0, 1.0, rng), std::invalid_argument);
}

TEST(WeightMonitor, TracksSweepMaximum) {
  const LinearGaussianModel model(scalar_lgssm(0.9, 1.0, 1.0));
  RandomSource rng(1);
  const auto data = simulate_data(model, 10, rng);
  const SsmTarget target(model, data.observations);
  WeightMonitor monitor;
  monitor.bound = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  SweepOptions options;
  options.monitor = &monitor;
  pgas_sweep(data.states, target, 10, rng, options);
  // Bootstrap weights are N(y; x, 1) densities, bounded by the peak density.
  EXPECT_FALSE(monitor.fired());
  EXPECT_LE(monitor.max_log_weight, std::log(monitor.bound));
  EXPECT_GT(monitor.max_log_weight, -INFINITY);
}

}  // namespace
}  // namespace pgas
