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

#include <cstdint>
#include <filesystem>
#include <string>

#include <pgas/particle_system.hpp>

#include "pgas_cli/config.hpp"

namespace pgas::cli {

/// Simulated or loaded data: one row per t with states and observations.
struct Dataset {
  Trajectory states;
  Trajectory observations;
};

/// Sidecar path: the CSV path with its extension replaced by ".meta".
std::filesystem::path meta_path(const std::filesystem::path& csv);

/// Header `t,x0..x{n-1},y0..y{p-1}`; numbers in shortest round-trip form.
void write_dataset(const std::filesystem::path& csv, const Dataset& data);

/// `key = value` lines: the model block as JSON, the seed and the shape.
void write_dataset_meta(const std::filesystem::path& csv, const ModelConfig& model, std::uint64_t seed,
                        const Dataset& data);

/// Checks the header against the expected dimensions. Rows beyond `horizon`
/// are ignored; fewer rows than `horizon` is an error.
Dataset read_dataset(const std::filesystem::path& csv, std::size_t state_dim, std::size_t obs_dim,
                     std::size_t horizon);

}  // namespace pgas::cli
