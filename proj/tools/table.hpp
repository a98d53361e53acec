// Copyright 2026 The Authors.
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


// Long-format result tables shared by the CLI subcommands. Numbers are
// written with 17 significant digits so a CSV read back compares equal.

#ifndef FEEDERLAB_TOOLS_TABLE_HPP_
#define FEEDERLAB_TOOLS_TABLE_HPP_

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace feederlab::cli {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string format_number(double x);

void write_csv(const Table& table, std::ostream& out);
// Cells that parse completely as numbers (including inf and nan) become
// doubles; everything else stays text. Throws DataError on ragged rows.
Table read_csv(std::istream& in);

// Array of row objects; NaN and infinities are written as null and as
// "inf"/"-inf" strings respectively.
void write_json(const Table& table, std::ostream& out, bool single_object = false);

// Cell-wise equality treating NaN as equal to NaN.
bool same_table(const Table& a, const Table& b);

}  // namespace feederlab::cli

#endif  // FEEDERLAB_TOOLS_TABLE_HPP_
