// Copyright 2026 The lossywalk Authors
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

namespace lossywalk {

enum class OutputFormat { Csv, Json };

/// Homogeneous numeric table: the single interchange shape of every
/// command output. Column order is part of the format.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Fixed 12-significant-digit decimal text, no locale formatting.
std::string format_double(double value);

void write_csv(const Table& table, const std::filesystem::path& path);
void write_json(const Table& table, const std::filesystem::path& path);
void serialize(const Table& table, OutputFormat format, const std::filesystem::path& path);

Table parse_csv(const std::filesystem::path& path);

}  // namespace lossywalk
