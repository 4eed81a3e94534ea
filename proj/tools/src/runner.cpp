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

#include "pgas_cli/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <thread>

#include <pgas/abc.hpp>
#include <pgas/diagnostics.hpp>
#include <pgas/errors.hpp>
#include <pgas/rejuvenation.hpp>
#include <pgas/samplers.hpp>

#include "pgas_cli/csv.hpp"
#include "pgas_cli/dataset.hpp"
#include "pgas_cli/model_factory.hpp"

namespace pgas::cli {

namespace fs = std::filesystem;

void write_manifest(const fs::path& path, const Manifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  for (const auto& [key, value] : manifest) out << key << " = " << value << '\n';
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open manifest '" + path.string() + "'");
  Manifest manifest;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    manifest.emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return manifest;
}

std::string manifest_value(const Manifest& manifest, const std::string& key) {
  for (const auto& [k, v] : manifest) {
    if (k == key) return v;
  }
  throw ValidationError("manifest has no '" + key + "' entry");
}

std::vector<std::string> run_files(const ExperimentConfig& config) {
  std::vector<std::string> files{"chain.csv", "summary.csv", "acf.csv", "acf_median.csv", "histogram.csv"};
  if (config.sampler.variant != "pimh") files.push_back("rates.csv");
  if (config.sampler.gibbs_theta) files.push_back("theta.csv");
  files.insert(files.end(), {"manifest.txt", "timing.txt"});
  return files;
}

namespace {

struct Step {
  Trajectory trajectory;
  std::vector<std::uint8_t> ancestor_changed;
  std::vector<std::uint8_t> kernel_moved;
  bool accepted = false;
};

/// One sweep of the configured variant, with the proposal and kernel objects
/// it needs.
class Sampler {
 public:
  Sampler(const SamplerConfig& config, const ModelBundle& bundle, const SsmTarget& target, double epsilon)
      : config_(config), bundle_(bundle), target_(target) {
    if (config_.variant == "pgas-rejuv") {
      plan_.emplace(config_.window, target_.horizon());
      rebuild();
    }
    if (config_.variant == "pgas-abc") {
      abc_.epsilon = epsilon;
      abc_.scale = config_.abc_scale;
    }
  }

  /// Rebuilds proposals that depend on the model dynamics.
  void rebuild() {
    if (config_.variant != "pgas-rejuv") return;
    kernel_.reset();
    if (config_.proposal == "prior") {
      proposal_ = std::make_unique<PriorWindowProposal>();
    } else if (config_.proposal == "random-walk") {
      proposal_ = std::make_unique<RandomWalkWindowProposal>(config_.step);
    } else {
      proposal_ = std::make_unique<GaussianBridgeProposal>(target_, bundle_.dynamics(), bundle_.initial_mean(),
                                                           bundle_.initial_covariance(), config_.window);
    }
    const AncestorProposal nu =
        config_.ancestor_proposal == "uniform" ? AncestorProposal::Uniform : AncestorProposal::FilterWeights;
    if (config_.kernel == "cis") {
      kernel_ = std::make_unique<CisKernel>(*proposal_, nu, config_.inner);
    } else if (config_.kernel == "mh") {
      kernel_ = std::make_unique<MhKernel>(*proposal_, nu, config_.mh_iterations);
    } else {
      kernel_ = std::make_unique<IdentityKernel>();
    }
  }

  void start_pimh(PimhState state) { pimh_ = std::move(state); }

  Step sweep(const Trajectory& reference, RandomSource& rng, const SweepOptions& options) {
    const std::size_t n = config_.particles;
    if (config_.variant == "pimh") {
      Step step;
      step.accepted = pimh_sweep(*pimh_, target_, n, rng, options);
      step.trajectory = pimh_->trajectory;
      return step;
    }
    SweepRecord rec;
    if (config_.variant == "pg") {
      rec = pg_sweep(reference, target_, n, rng, options);
    } else if (config_.variant == "pgas") {
      rec = pgas_sweep(reference, target_, n, rng, options);
    } else if (config_.variant == "pgas-rejuv") {
      rec = pgas_rejuvenated_sweep(reference, target_, n, *plan_, *kernel_, rng, options);
    } else {
      rec = pgas_abc_sweep(reference, target_, n, abc_, rng, options);
    }
    return {std::move(rec.trajectory), std::move(rec.ancestor_changed), std::move(rec.kernel_moved), false};
  }

 private:
  const SamplerConfig& config_;
  const ModelBundle& bundle_;
  const SsmTarget& target_;
  std::optional<RejuvenationPlan> plan_;
  std::unique_ptr<WindowProposal> proposal_;
  std::unique_ptr<RejuvenationKernel> kernel_;
  AbcKernel abc_;
  std::optional<PimhState> pimh_;
};

/// Model/variant combinations that cannot run, reported before any output.
void check_compatible(const ExperimentConfig& config, const ModelBundle& bundle) {
  const auto& s = config.sampler;
  const auto& model = bundle.model();
  if ((s.variant == "pgas" || s.variant == "pgas-rejuv") && !model.has_transition_density()) {
    throw ValidationError("variant '" + s.variant + "' needs a transition density; model '" + bundle.name() +
                          "' is simulator-only (use pgas-abc, pg or pimh)");
  }
  if (s.variant == "pgas-rejuv") {
    if (s.window > config.model.horizon) throw ValidationError("sampler.window exceeds model.horizon");
    if (s.proposal == "bridge" && !bundle.has_linear_dynamics()) {
      throw ValidationError("the bridge proposal needs linear-Gaussian dynamics (lgssm, ar or tracking)");
    }
    if (s.inner == 1) throw ValidationError("sampler.inner must be 0 (meaning N) or >= 2");
  }
  if (s.variant == "pgas-abc") {
    AbcKernel kernel;
    kernel.scale = s.abc_scale;
    try {
      kernel.validate(model.state_dim());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("sampler.abc_scale: ") + e.what());
    }
    std::set<double> seen(s.epsilon.begin(), s.epsilon.end());
    if (seen.size() != s.epsilon.size()) throw ValidationError("sampler.epsilon has repeated values");
  }
  if (s.gibbs_theta) {
    if (!bundle.tracking()) throw ValidationError("sampler.gibbs_theta is only available for the tracking model");
    if (s.variant == "pimh") throw ValidationError("sampler.gibbs_theta cannot be combined with pimh");
  }
  if (s.iterations - s.burn_in < 2 * s.thinning) {
    throw ValidationError("fewer than two post-burn-in samples after thinning");
  }
}

std::size_t density_calls(const StateSpaceModel& model) {
  if (const auto* b = dynamic_cast<const BlackBoxModel*>(&model)) return b->density_calls();
  if (const auto* l = dynamic_cast<const Lorenz63Model*>(&model)) return l->density_calls();
  return 0;
}

void write_summaries(const fs::path& dir, const SamplerConfig& s, const std::vector<Trajectory>& kept,
                     const std::vector<std::vector<std::uint8_t>>& ancestor_logs,
                     const std::vector<std::vector<std::uint8_t>>& kernel_logs) {
  const std::size_t horizon = kept.front().length();
  const std::size_t dim = kept.front().dim();
  std::vector<std::vector<double>> columns(horizon * dim);
  for (const auto& x : kept) {
    for (std::size_t t = 0; t < horizon; ++t) {
      for (std::size_t j = 0; j < dim; ++j) columns[t * dim + j].push_back(x(t, j));
    }
  }
  const ChainSummary summary = summarize_chain(columns, s.max_lag, ancestor_logs, kernel_logs);

  std::ofstream sum(dir / "summary.csv", std::ios::binary);
  sum << "t,component,mean,variance,batch_se\n";
  std::ofstream ac(dir / "acf.csv", std::ios::binary);
  ac << "t,component,lag,value\n";
  std::ofstream hist(dir / "histogram.csv", std::ios::binary);
  hist << "t,component,left,right,count\n";
  std::vector<std::vector<double>> by_lag;
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t c = t * dim + j;
      sum << t << ',' << j << ',' << format_double(summary.means[c]) << ',' << format_double(summary.variances[c])
          << ',' << format_double(summary.batch_se[c]) << '\n';
      const auto& r = summary.acf[c];
      for (std::size_t lag = 0; lag < r.size(); ++lag) {
        ac << t << ',' << j << ',' << lag << ',' << format_double(r[lag]) << '\n';
        if (j == 0) {
          if (by_lag.size() <= lag) by_lag.resize(lag + 1);
          by_lag[lag].push_back(r[lag]);
        }
      }
      const auto& h = summary.histograms[c];
      for (std::size_t b = 0; b < h.counts.size(); ++b) {
        hist << t << ',' << j << ',' << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ','
             << h.counts[b] << '\n';
      }
    }
  }
  std::vector<double> median_acf;
  for (auto& v : by_lag) median_acf.push_back(median(v));
  std::ofstream med(dir / "acf_median.csv", std::ios::binary);
  write_series_csv(med, "lag", "acf", median_acf);

  if (s.variant != "pimh") {
    std::ofstream rates(dir / "rates.csv", std::ios::binary);
    rates << "t,ancestor_update_rate,kernel_move_rate\n";
    for (std::size_t t = 0; t < horizon; ++t) {
      rates << t << ',' << format_double(summary.ancestor_update_rate[t]) << ','
            << format_double(summary.kernel_move_rate.empty() ? 0.0 : summary.kernel_move_rate[t]) << '\n';
    }
  }
}

struct ChainJob {
  ExperimentConfig config;  // single epsilon, seed of this chain
  fs::path dir;
};

void run_chain(const ChainJob& job, const RunOptions& options, const std::string& dataset_hash) {
  const auto wall_start = std::chrono::steady_clock::now();
  const ExperimentConfig& config = job.config;
  const SamplerConfig& s = config.sampler;
  ModelBundle bundle(config.model);
  check_compatible(config, bundle);
  const StateSpaceModel& model = bundle.model();
  const Dataset data = read_dataset(options.dataset, model.state_dim(), model.obs_dim(), config.model.horizon);
  const SsmTarget target(model, data.observations);
  Sampler sampler(s, bundle, target, s.epsilon.empty() ? 0.0 : s.epsilon.front());

  ensure_directory(job.dir);
  for (const auto& f : run_files(config)) fs::remove(job.dir / f);
  fs::remove(job.dir / "PARTIAL");

  Manifest manifest{{"format", "pgas-run-1"},
                    {"command", "run"},
                    {"config", config.to_json().dump()},
                    {"dataset", fs::absolute(options.dataset).lexically_normal().string()},
                    {"dataset_fnv1a", dataset_hash},
                    {"seed", std::to_string(config.seed)}};
  if (!s.epsilon.empty()) manifest.emplace_back("epsilon", format_double(s.epsilon.front()));

  std::ofstream chain(job.dir / "chain.csv", std::ios::binary);
  chain << "iteration,burn_in,t";
  for (std::size_t j = 0; j < model.state_dim(); ++j) chain << ",x" << j;
  chain << '\n';
  std::ofstream theta_out;
  if (s.gibbs_theta) {
    theta_out.open(job.dir / "theta.csv", std::ios::binary);
    theta_out << "iteration,burn_in,theta\n";
  }

  WeightMonitor monitor;
  ParticleSystem workspace(s.particles, config.model.horizon, model.state_dim());
  const SweepOptions sweep_options{&monitor, &workspace};
  RandomSource rng(config.seed);
  std::size_t completed = 0, accepted = 0;
  std::vector<Trajectory> kept;
  std::vector<std::vector<std::uint8_t>> ancestor_logs, kernel_logs;

  try {
    PimhState init = pimh_initialize(target, s.particles, rng);
    Trajectory reference = init.trajectory;
    if (s.variant == "pimh") sampler.start_pimh(std::move(init));
    for (std::size_t it = 0; it < s.iterations; ++it) {
      const bool burning = it < s.burn_in;
      const bool record = (burning ? it : it - s.burn_in) % s.thinning == 0;
      if (s.gibbs_theta) {
        TrackingModel& tracking = *bundle.tracking();
        const double theta = tracking_theta_conditional(reference, tracking.spec(), rng);
        tracking.set_theta(theta);
        sampler.rebuild();
        if (record) theta_out << it << ',' << (burning ? 1 : 0) << ',' << format_double(theta) << '\n';
      }
      Step step = sampler.sweep(reference, rng, sweep_options);
      reference = std::move(step.trajectory);
      ++completed;
      if (step.accepted) ++accepted;
      if (!burning) {
        ancestor_logs.push_back(std::move(step.ancestor_changed));
        kernel_logs.push_back(std::move(step.kernel_moved));
      }
      if (!record) continue;
      for (std::size_t t = 0; t < reference.length(); ++t) {
        chain << it << ',' << (burning ? 1 : 0) << ',' << t;
        for (double v : reference.at(t)) chain << ',' << format_double(v);
        chain << '\n';
      }
      if (!burning) kept.push_back(reference);
    }
  } catch (const std::exception& e) {
    chain.close();
    theta_out.close();
    std::ofstream(job.dir / "PARTIAL", std::ios::binary) << "run stopped after " << completed << " of "
                                                          << s.iterations << " iterations\n";
    manifest.emplace_back("status", "failed");
    manifest.emplace_back("error", e.what());
    manifest.emplace_back("iterations_completed", std::to_string(completed));
    manifest.emplace_back("max_log_weight", format_double(monitor.max_log_weight));
    write_manifest(job.dir / "manifest.txt", manifest);
    throw;
  }
  chain.close();
  theta_out.close();

  if (s.variant == "pimh") ancestor_logs.clear();
  if (s.variant != "pgas-rejuv") kernel_logs.clear();
  write_summaries(job.dir, s, kept, ancestor_logs, kernel_logs);

  manifest.emplace_back("status", "complete");
  manifest.emplace_back("iterations_completed", std::to_string(completed));
  manifest.emplace_back("samples_kept", std::to_string(kept.size()));
  manifest.emplace_back("max_log_weight", format_double(monitor.max_log_weight));
  manifest.emplace_back("max_weight", format_double(monitor.max_weight()));
  if (s.variant == "pimh") {
    manifest.emplace_back("pimh_acceptance_rate",
                          format_double(static_cast<double>(accepted) / static_cast<double>(completed)));
  }
  if (!model.has_transition_density()) {
    manifest.emplace_back("transition_density_calls", std::to_string(density_calls(model)));
  }
  std::string files;
  for (const auto& f : run_files(config)) files += (files.empty() ? "" : ",") + f;
  manifest.emplace_back("files", files);
  write_manifest(job.dir / "manifest.txt", manifest);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  std::ofstream(job.dir / "timing.txt", std::ios::binary) << "wall_clock_seconds = " << seconds << '\n';
}

}  // namespace

std::vector<fs::path> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  if (config.sampler.variant.empty()) throw ValidationError("config.sampler is required");
  {
    // Validate the model block and compatibility before touching the output.
    ModelBundle bundle(config.model);
    check_compatible(config, bundle);
    read_dataset(options.dataset, bundle.model().state_dim(), bundle.model().obs_dim(), config.model.horizon);
  }
  const std::string hash = hex64(fnv1a_file(options.dataset));
  std::vector<ChainJob> jobs;
  const auto& eps = config.sampler.epsilon;
  if (eps.size() <= 1) {
    jobs.push_back({config, options.out});
    jobs.back().config.output = fs::absolute(options.out).lexically_normal().string();
  } else {
    for (std::size_t k = 0; k < eps.size(); ++k) {
      ChainJob job{config, options.out / ("eps_" + format_double(eps[k]))};
      job.config.sampler.epsilon = {eps[k]};
      job.config.seed = RandomSource::stream(config.seed, k).seed();
      job.config.output = fs::absolute(job.dir).lexically_normal().string();
      jobs.push_back(std::move(job));
    }
  }
  ensure_directory(options.out);

  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        run_chain(jobs[k], options, hash);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, jobs.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (jobs.size() > 1) {
    Manifest top{{"format", "pgas-sweep-1"},
                 {"command", "run"},
                 {"config", config.to_json().dump()},
                 {"dataset", fs::absolute(options.dataset).lexically_normal().string()},
                 {"dataset_fnv1a", hash}};
    std::size_t failed = 0;
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      top.emplace_back("run", jobs[k].dir.filename().string() + (errors[k] ? " failed" : " complete"));
      if (errors[k]) ++failed;
    }
    top.emplace_back("status", failed ? "failed" : "complete");
    write_manifest(options.out / "manifest.txt", top);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<fs::path> dirs;
  for (const auto& j : jobs) dirs.push_back(j.dir);
  return dirs;
}

}  // namespace pgas::cli
