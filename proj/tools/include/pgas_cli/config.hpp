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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace pgas::cli {

/// Invalid configuration or input; maps to exit status 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model block: `name`, `horizon` and the model's own parameters, kept as
/// JSON so that the model factory can validate them against its schema.
struct ModelConfig {
  std::string name;
  std::size_t horizon = 0;
  nlohmann::json params = nlohmann::json::object();
};

struct SamplerConfig {
  std::string variant;  // pg, pimh, pgas, pgas-rejuv, pgas-abc
  std::size_t particles = 0;
  std::size_t iterations = 0;
  std::size_t burn_in = 0;
  std::size_t thinning = 1;
  std::size_t max_lag = 50;

  // pgas-rejuv
  std::size_t window = 0;
  std::string kernel = "cis";  // cis, mh, identity
  std::string proposal = "prior";  // prior, bridge, random-walk
  std::string ancestor_proposal = "filter";  // filter, uniform
  std::size_t inner = 0;
  std::size_t mh_iterations = 1;
  double step = 0.0;

  // pgas-abc
  std::vector<double> epsilon;
  std::vector<double> abc_scale;

  // Gibbs over theta (tracking model only)
  bool gibbs_theta = false;
};

struct ExperimentConfig {
  ModelConfig model;
  SamplerConfig sampler;
  std::uint64_t seed = 0;
  std::string output;

  /// Canonical JSON form, used for the manifest echo.
  nlohmann::json to_json() const;
};

/// Strict parse: unknown keys and keys that do not apply to the chosen
/// variant are errors. `need_sampler` is false for `simulate`.
ExperimentConfig parse_config(const nlohmann::json& doc, bool need_sampler);
ExperimentConfig load_config(const std::string& path, bool need_sampler);

}  // namespace pgas::cli
