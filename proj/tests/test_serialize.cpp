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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "lossywalk/serialize.hpp"
#include "lossywalk/types.hpp"

using namespace lossywalk;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "lossywalk_serialize_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("format_double uses 12 significant digits, C locale") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(-2.5e-9) == "-2.5e-09");
  CHECK(format_double(123456789012.0) == "123456789012");
}

TEST_CASE("empty row list writes a header-only file") {
  Table table;
  table.columns = {"v", "p_imb"};
  const auto path = temp_file("empty.csv");
  write_csv(table, path);
  CHECK(slurp(path) == "v,p_imb\n");
}

TEST_CASE("csv column order matches the declaration") {
  Table table;
  table.columns = {"v", "p_imb", "p_1", "p_L", "residual", "edge_state_count",
                   "bloch_w", "nonbloch_w"};
  table.rows.push_back({0.3, 0.14, 0.35, 0.002, 1e-9, 2, 0.5, 1});
  const auto path = temp_file("one_row.csv");
  write_csv(table, path);
  CHECK(slurp(path) ==
        "v,p_imb,p_1,p_L,residual,edge_state_count,bloch_w,nonbloch_w\n"
        "0.3,0.14,0.35,0.002,1e-09,2,0.5,1\n");
}

TEST_CASE("csv round-trip preserves 12 significant digits") {
  std::mt19937 rng(20260810);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-12, 12);

  Table table;
  table.columns = {"a", "b", "c"};
  for (int row = 0; row < 200; ++row) {
    std::vector<double> values;
    for (int c = 0; c < 3; ++c)
      values.push_back(mantissa(rng) * std::pow(10.0, exponent(rng)));
    table.rows.push_back(std::move(values));
  }

  const auto path = temp_file("roundtrip.csv");
  write_csv(table, path);
  const Table parsed = parse_csv(path);
  REQUIRE(parsed.columns == table.columns);
  REQUIRE(parsed.rows.size() == table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    for (std::size_t c = 0; c < 3; ++c) {
      const double original = table.rows[i][c];
      const double recovered = parsed.rows[i][c];
      CHECK(std::abs(recovered - original) <= 1e-11 * std::abs(original));
    }
}

TEST_CASE("identical tables serialize to identical bytes") {
  Table table;
  table.columns = {"x", "y"};
  for (int i = 0; i < 50; ++i)
    table.rows.push_back({i * 0.037, std::sin(i * 0.2) * 1e-7});
  const auto first = temp_file("bytes_a.csv");
  const auto second = temp_file("bytes_b.csv");
  write_csv(table, first);
  write_csv(table, second);
  CHECK(slurp(first) == slurp(second));

  const auto json_first = temp_file("bytes_a.json");
  const auto json_second = temp_file("bytes_b.json");
  write_json(table, json_first);
  write_json(table, json_second);
  CHECK(slurp(json_first) == slurp(json_second));
}

TEST_CASE("json output is an array of objects with identical keys") {
  Table table;
  table.columns = {"m", "P"};
  table.rows.push_back({1, 0.25});
  table.rows.push_back({2, 0.75});
  const auto path = temp_file("rows.json");
  write_json(table, path);

  const nlohmann::json doc = nlohmann::json::parse(slurp(path));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["m"] == 1.0);
  CHECK(doc[0]["P"] == 0.25);
  CHECK(doc[1]["P"] == 0.75);
}

TEST_CASE("malformed tables and files are rejected") {
  Table ragged;
  ragged.columns = {"a", "b"};
  ragged.rows.push_back({1.0});
  CHECK_THROWS_AS(write_csv(ragged, temp_file("ragged.csv")), IoError);

  const auto bad = temp_file("bad.csv");
  std::ofstream(bad) << "a,b\n1,oops\n";
  CHECK_THROWS_AS(parse_csv(bad), IoError);
  CHECK_THROWS_AS(parse_csv(temp_file("does_not_exist.csv")), IoError);
}
