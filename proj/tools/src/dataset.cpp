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

#include "pgas_cli/dataset.hpp"

#include <fstream>

#include <pgas/diagnostics.hpp>

#include "pgas_cli/csv.hpp"

namespace pgas::cli {

std::filesystem::path meta_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".meta");
  return p;
}

void write_dataset(const std::filesystem::path& csv, const Dataset& data) {
  std::ofstream out(csv, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + csv.string() + "'");
  out << "t";
  for (std::size_t j = 0; j < data.states.dim(); ++j) out << ",x" << j;
  for (std::size_t j = 0; j < data.observations.dim(); ++j) out << ",y" << j;
  out << '\n';
  for (std::size_t t = 0; t < data.observations.length(); ++t) {
    out << t;
    for (double v : data.states.at(t)) out << ',' << format_double(v);
    for (double v : data.observations.at(t)) out << ',' << format_double(v);
    out << '\n';
  }
  if (!out) throw ValidationError("write to '" + csv.string() + "' failed");
}

void write_dataset_meta(const std::filesystem::path& csv, const ModelConfig& model, std::uint64_t seed,
                        const Dataset& data) {
  nlohmann::json block = model.params;
  block["name"] = model.name;
  block["horizon"] = model.horizon;
  std::ofstream out(meta_path(csv), std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + meta_path(csv).string() + "'");
  out << "format = pgas-dataset-1\n";
  out << "model = " << block.dump() << '\n';
  out << "seed = " << seed << '\n';
  out << "rows = " << data.observations.length() << '\n';
  out << "state_dim = " << data.states.dim() << '\n';
  out << "obs_dim = " << data.observations.dim() << '\n';
  out << "data = " << csv.filename().string() << '\n';
}

Dataset read_dataset(const std::filesystem::path& csv, std::size_t state_dim, std::size_t obs_dim,
                     std::size_t horizon) {
  const CsvTable table = read_csv(csv);
  std::vector<std::string> expected{"t"};
  for (std::size_t j = 0; j < state_dim; ++j) expected.push_back("x" + std::to_string(j));
  for (std::size_t j = 0; j < obs_dim; ++j) expected.push_back("y" + std::to_string(j));
  if (table.header != expected) {
    throw ValidationError("dataset '" + csv.string() + "' does not match the model: expected " +
                          std::to_string(state_dim) + " state and " + std::to_string(obs_dim) +
                          " observation columns");
  }
  if (table.rows.size() < horizon) {
    throw ValidationError("dataset '" + csv.string() + "' has " + std::to_string(table.rows.size()) +
                          " rows, the model horizon is " + std::to_string(horizon));
  }
  Dataset data{Trajectory(horizon, state_dim), Trajectory(horizon, obs_dim)};
  for (std::size_t t = 0; t < horizon; ++t) {
    const auto& row = table.rows[t];
    if (row[0] != static_cast<double>(t)) {
      throw ValidationError("dataset '" + csv.string() + "': row " + std::to_string(t) + " has t = " +
                            format_double(row[0]));
    }
    for (std::size_t j = 0; j < state_dim; ++j) data.states(t, j) = row[1 + j];
    for (std::size_t j = 0; j < obs_dim; ++j) data.observations(t, j) = row[1 + state_dim + j];
  }
  return data;
}

}  // namespace pgas::cli
