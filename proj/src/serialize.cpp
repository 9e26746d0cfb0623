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

#include "lossywalk/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lossywalk/types.hpp"

namespace lossywalk {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

namespace {

void check_rows(const Table& table) {
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size())
      throw IoError("table row width does not match the header");
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

void write_csv(const Table& table, const std::filesystem::path& path) {
  check_rows(table);
  std::ofstream out = open_for_write(path);
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const Table& table, const std::filesystem::path& path) {
  check_rows(table);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json object = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) object[table.columns[c]] = row[c];
    rows.push_back(std::move(object));
  }
  std::ofstream out = open_for_write(path);
  out << rows.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

void serialize(const Table& table, OutputFormat format, const std::filesystem::path& path) {
  if (format == OutputFormat::Csv)
    write_csv(table, path);
  else
    write_json(table, path);
}

Table parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");

  Table table;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": missing header row");
  std::stringstream header(line);
  std::string field;
  while (std::getline(header, field, ',')) table.columns.push_back(field);

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    while (std::getline(cells, field, ',')) {
      char* end = nullptr;
      row.push_back(std::strtod(field.c_str(), &end));
      if (end == field.c_str()) throw IoError(path.string() + ": non-numeric cell '" + field + "'");
    }
    if (row.size() != table.columns.size())
      throw IoError(path.string() + ": row width does not match the header");
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace lossywalk
