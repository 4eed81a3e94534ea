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
#include <vector>

namespace pgas::cli {

/// Numeric CSV table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  /// Raw cells of the text columns, one vector per row; their numeric cells are NaN.
  std::vector<std::vector<std::string>> text;

  /// Index of a header column; throws ValidationError when missing.
  std::size_t column(const std::string& name) const;
};

/// Throws ValidationError on unreadable files, ragged rows or non-numeric
/// cells outside `text_columns`.
CsvTable read_csv(const std::filesystem::path& path, const std::vector<std::string>& text_columns = {});

/// 64-bit FNV-1a of the file contents.
std::uint64_t fnv1a_file(const std::filesystem::path& path);

std::string hex64(std::uint64_t v);

/// Creates the directory (and parents); throws ValidationError on failure.
void ensure_directory(const std::filesystem::path& dir);

}  // namespace pgas::cli
