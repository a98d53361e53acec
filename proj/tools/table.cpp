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


#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "feederlab/error.hpp"

namespace feederlab::cli {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

Cell parse_cell(const std::string& text) {
  if (text.empty()) return text;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() + text.size()) return v;
  return text;
}

nlohmann::json cell_json(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  const double v = std::get<double>(cell);
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table row has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << quote_if_needed(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) {
        out << quote_if_needed(*s);
      } else {
        out << format_number(std::get<double>(row[i]));
      }
    }
    out << '\n';
  }
}

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) return table;
  table.columns = split_line(line);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_line(line);
    if (fields.size() != table.columns.size()) {
      throw DataError("csv row " + std::to_string(row) + ": expected " +
                      std::to_string(table.columns.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    std::vector<Cell> cells;
    cells.reserve(fields.size());
    for (const auto& f : fields) cells.push_back(parse_cell(f));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

void write_json(const Table& table, std::ostream& out, bool single_object) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  if (single_object && rows.size() == 1) {
    out << rows[0].dump(2) << '\n';
  } else {
    out << rows.dump(2) << '\n';
  }
}

bool same_table(const Table& a, const Table& b) {
  if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    for (std::size_t c = 0; c < a.columns.size(); ++c) {
      const Cell& x = a.rows[r][c];
      const Cell& y = b.rows[r][c];
      if (x.index() != y.index()) return false;
      if (const auto* dx = std::get_if<double>(&x)) {
        const double dy = std::get<double>(y);
        if (!(*dx == dy || (std::isnan(*dx) && std::isnan(dy)))) return false;
      } else if (x != y) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace feederlab::cli
