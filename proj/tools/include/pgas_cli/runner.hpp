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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pgas_cli/config.hpp"

namespace pgas::cli {

struct RunOptions {
  std::filesystem::path dataset;
  std::filesystem::path out;
  std::size_t threads = 1;
};

/// Ordered `key = value` lines of a plain-text manifest.
using Manifest = std::vector<std::pair<std::string, std::string>>;
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
/// Parses a manifest written by write_manifest.
Manifest read_manifest(const std::filesystem::path& path);
std::string manifest_value(const Manifest& manifest, const std::string& key);

/// Runs the configured sampler on the dataset. A config with several epsilon
/// values fans out into one chain per value, each in `out/eps_<value>` with
/// its own seed from RandomSource::stream(seed, index), spread over
/// `threads` workers. Returns the run directories.
///
/// Each run directory holds chain.csv (every thinning-th sweep, burn-in
/// flagged), summary.csv, acf.csv, acf_median.csv, histogram.csv, rates.csv,
/// theta.csv (Gibbs only), manifest.txt and timing.txt. Summaries use the
/// post-burn-in rows of chain.csv. A failed chain leaves a PARTIAL marker and
/// a manifest with status = failed; its error is rethrown.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config, const RunOptions& options);

/// Files a finished run directory contains, in manifest order.
std::vector<std::string> run_files(const ExperimentConfig& config);

}  // namespace pgas::cli
