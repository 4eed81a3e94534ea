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

#include "pgas_cli/app.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <pgas/errors.hpp>
#include <pgas/models/simulate.hpp>

#include "pgas_cli/compare.hpp"
#include "pgas_cli/config.hpp"
#include "pgas_cli/csv.hpp"
#include "pgas_cli/dataset.hpp"
#include "pgas_cli/model_factory.hpp"
#include "pgas_cli/runner.hpp"

namespace pgas::cli {

namespace fs = std::filesystem;

namespace {

struct Flags {
  std::string config;
  std::string dataset;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::string reference;
  std::vector<std::string> runs;
};

fs::path output_dir(const Flags& flags, const ExperimentConfig& config) {
  if (!flags.out.empty()) return flags.out;
  if (!config.output.empty()) return config.output;
  throw ValidationError("no output directory: pass --out or set config.output");
}

void cmd_simulate(const Flags& flags, std::ostream& out) {
  ExperimentConfig config = load_config(flags.config, false);
  if (flags.seed) config.seed = *flags.seed;
  const fs::path dir = output_dir(flags, config);
  const ModelBundle bundle(config.model);
  RandomSource rng(config.seed);
  const SimulatedData sim = simulate_data(bundle.model(), config.model.horizon, rng);
  ensure_directory(dir);
  const Dataset data{sim.states, sim.observations};
  write_dataset(dir / "dataset.csv", data);
  write_dataset_meta(dir / "dataset.csv", config.model, config.seed, data);
  out << (dir / "dataset.csv").string() << '\n';
}

void cmd_run(const Flags& flags, std::ostream& out) {
  ExperimentConfig config = load_config(flags.config, true);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.threads == 0) throw ValidationError("--threads must be >= 1");
  const RunOptions options{flags.dataset, output_dir(flags, config), flags.threads};
  for (const auto& dir : run_experiment(config, options)) out << dir.string() << '\n';
}

void cmd_compare(const Flags& flags, std::ostream& out) {
  if (flags.out.empty()) throw ValidationError("compare needs --out");
  CompareOptions options;
  for (const auto& r : flags.runs) options.runs.emplace_back(r);
  options.reference = flags.reference;
  options.out = flags.out;
  compare_runs(options);
  out << options.out.string() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Particle MCMC experiment runner"};
  app.require_subcommand(1);
  Flags flags;

  auto* simulate = app.add_subcommand("simulate", "Simulate a dataset from a model block");
  simulate->add_option("--config", flags.config, "Experiment config (JSON)")->required();
  simulate->add_option("--out", flags.out, "Output directory");
  simulate->add_option("--seed", flags.seed, "Seed; overrides the config");

  auto* run = app.add_subcommand("run", "Run a sampler on a dataset");
  run->add_option("--config", flags.config, "Experiment config (JSON)")->required();
  run->add_option("--dataset", flags.dataset, "Dataset CSV")->required();
  run->add_option("--out", flags.out, "Output directory");
  run->add_option("--seed", flags.seed, "Seed; overrides the config");
  run->add_option("--threads", flags.threads, "Worker threads for epsilon sweeps");

  auto* compare = app.add_subcommand("compare", "Compare run directories");
  compare->add_option("runs", flags.runs, "Run directories")->required();
  compare->add_option("--reference", flags.reference, "Reference run directory (default: first run)");
  compare->add_option("--out", flags.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*simulate) cmd_simulate(flags, out);
    if (*run) cmd_run(flags, out);
    if (*compare) cmd_compare(flags, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const pgas::Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace pgas::cli
