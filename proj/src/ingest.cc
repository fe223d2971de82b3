// Copyright 2026 The Faircap Authors.
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

#include "faircap/ingest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "faircap/error.h"

namespace faircap {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool ParseDouble(const std::string& text, double* out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end && std::isfinite(*out);
}

int FindColumn(const std::vector<std::string>& header, const std::string& name,
               const char* role) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw DataError(DataErrorKind::kMissingColumn,
                    std::string(role) + " column '" + name + "' not in header");
  }
  return static_cast<int>(it - header.begin());
}

}  // namespace

CsvTable ParseCsv(const std::string& text, char delimiter) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  int line = 1;
  int record_line = 1;

  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && Trim(record[0]).empty();
    if (!blank) {
      if (table.header.empty()) {
        table.header = std::move(record);
      } else {
        table.rows.push_back(std::move(record));
        table.line_numbers.push_back(record_line);
      }
    }
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == delimiter) {
      end_field();
    } else if (c == '\r') {
      // handled with the following '\n'
    } else if (c == '\n') {
      end_record();
      ++line;
      record_line = line;
    } else {
      field.push_back(c);
      if (c != ' ' && c != '\t') field_started = true;
    }
  }
  if (!field.empty() || !record.empty()) end_record();
  if (table.header.empty()) {
    throw DataError(DataErrorKind::kEmptyFile, "no header row");
  }
  for (auto& name : table.header) name = Trim(name);
  return table;
}

CsvTable ReadCsv(const std::string& path, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(DataErrorKind::kIo, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    text.erase(0, 3);
  }
  try {
    return ParseCsv(text, delimiter);
  } catch (const DataError& e) {
    throw DataError(e.kind(), path + ": " + e.detail());
  }
}

Dataset DatasetFromTable(const CsvTable& table, const DatasetSpec& spec) {
  const auto& header = table.header;
  const std::size_t width = header.size();
  if (table.rows.empty()) {
    throw DataError(DataErrorKind::kEmptyFile, "header present but no rows");
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != width) {
      throw DataError(DataErrorKind::kRaggedRow,
                      "line " + std::to_string(table.line_numbers[r]) +
                          " has " + std::to_string(table.rows[r].size()) +
                          " fields, header has " + std::to_string(width));
    }
  }

  const int protected_col =
      FindColumn(header, spec.protected_column, "protected");
  std::vector<bool> excluded(width, false);
  excluded[protected_col] = true;
  for (const auto& name : spec.drop_columns) {
    excluded[FindColumn(header, name, "dropped")] = true;
  }
  int id_col = -1;
  if (!spec.id_column.empty()) {
    id_col = FindColumn(header, spec.id_column, "id");
    excluded[id_col] = true;
  }

  // Missing cells are rejected for every retained column.
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const bool checked = !excluded[c] || static_cast<int>(c) == protected_col;
      if (checked && Trim(table.rows[r][c]).empty()) {
        throw DataError(DataErrorKind::kMissingValue,
                        "line " + std::to_string(table.line_numbers[r]) +
                            ", column '" + header[c] + "' is empty");
      }
    }
  }

  std::set<std::string> protected_values;
  for (const auto& row : table.rows) {
    protected_values.insert(Trim(row[protected_col]));
  }
  if (protected_values.size() != 2) {
    throw DataError(DataErrorKind::kProtectedValues,
                    "column '" + spec.protected_column + "' has " +
                        std::to_string(protected_values.size()) +
                        " distinct values, expected 2");
  }
  std::string positive = spec.positive_label.empty()
                             ? *protected_values.rbegin()
                             : spec.positive_label;
  if (!protected_values.contains(positive)) {
    throw DataError(DataErrorKind::kProtectedValues,
                    "positive label '" + positive + "' does not occur in '" +
                        spec.protected_column + "'");
  }

  // Column plan, in file order.
  struct Column {
    int source;
    bool numeric;
    std::vector<std::string> levels;  // categorical only, sorted
    std::vector<double> values;       // numeric only
  };
  std::vector<Column> columns;
  for (std::size_t c = 0; c < width; ++c) {
    if (excluded[c]) continue;
    Column col{static_cast<int>(c), true, {}, {}};
    col.values.reserve(table.rows.size());
    for (const auto& row : table.rows) {
      double v;
      if (!ParseDouble(Trim(row[c]), &v)) {
        col.numeric = false;
        break;
      }
      col.values.push_back(v);
    }
    if (!col.numeric) {
      col.values.clear();
      std::set<std::string> levels;
      for (const auto& row : table.rows) levels.insert(Trim(row[c]));
      col.levels.assign(levels.begin(), levels.end());
    }
    columns.push_back(std::move(col));
  }

  std::vector<std::string> names;
  for (const auto& col : columns) {
    if (col.numeric) {
      names.push_back(header[col.source]);
    } else {
      for (const auto& level : col.levels) {
        names.push_back(header[col.source] + "=" + level);
      }
    }
  }
  if (names.empty()) {
    throw DataError(DataErrorKind::kMissingColumn,
                    "no feature columns remain after exclusions");
  }

  if (spec.scale == Scaling::kMinMax) {
    for (auto& col : columns) {
      if (!col.numeric) continue;
      const auto [lo, hi] =
          std::minmax_element(col.values.begin(), col.values.end());
      const double min = *lo;
      const double range = *hi - *lo;
      for (double& v : col.values) v = range > 0.0 ? (v - min) / range : 0.0;
    }
  }

  const std::size_t n = table.rows.size();
  const std::size_t dim = names.size();
  std::vector<double> features;
  features.reserve(n * dim);
  std::vector<int> labels(n);
  std::vector<std::string> row_ids(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = table.rows[r];
    for (const auto& col : columns) {
      if (col.numeric) {
        features.push_back(col.values[r]);
      } else {
        const std::string cell = Trim(row[col.source]);
        for (const auto& level : col.levels) {
          features.push_back(level == cell ? 1.0 : 0.0);
        }
      }
    }
    labels[r] = Trim(row[protected_col]) == positive ? 1 : 0;
    row_ids[r] = id_col >= 0 ? Trim(row[id_col])
                             : std::to_string(table.line_numbers[r]);
  }
  return Dataset(std::move(features), dim, std::move(labels),
                 std::move(row_ids), std::move(names));
}

Dataset LoadCsv(const DatasetSpec& spec) {
  const CsvTable table = ReadCsv(spec.path, spec.delimiter);
  try {
    return DatasetFromTable(table, spec);
  } catch (const DataError& e) {
    throw DataError(e.kind(), spec.path + ": " + e.detail());
  }
}

BalanceRatio DatasetBalance(const Dataset& data) {
  const auto counts = data.GroupCounts();
  if (counts[0] == 0 || counts[1] == 0) {
    throw DataError(DataErrorKind::kSingleGroup,
                    "only one protected group present (" +
                        std::to_string(counts[0]) + " vs " +
                        std::to_string(counts[1]) + ")");
  }
  return BalanceOf(counts[0], counts[1]);
}

}  // namespace faircap
