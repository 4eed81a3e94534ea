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
#include <vector>

#include <pgas/particle_system.hpp>

namespace pgas::cli {

/// Post-burn-in samples of a run directory, read back from chain.csv.
struct RunSamples {
  std::string label;
  std::vector<Trajectory> samples;
  std::vector<double> median_acf;
};

RunSamples load_run(const std::filesystem::path& dir);

struct CompareOptions {
  std::vector<std::filesystem::path> runs;
  /// Defaults to the first run.
  std::filesystem::path reference;
  std::filesystem::path out;
};

/// Writes acf_overlay.csv (lag, one column per run), ks.csv (per run, t and
/// component against the reference), rmse.csv (posterior-mean RMSE against
/// the reference), rmse_curve.csv (RMSE of the running mean after each kept
/// sample) and manifest.txt. Runs whose horizon or state dimension differ
/// from the reference raise ValidationError.
void compare_runs(const CompareOptions& options);

}  // namespace pgas::cli
