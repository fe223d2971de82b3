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

#ifndef FAIRCAP_INGEST_H_
#define FAIRCAP_INGEST_H_

#include <string>
#include <vector>

#include "faircap/core.h"

namespace faircap {

enum class Scaling { kMinMax, kNone };

struct DatasetSpec {
  std::string path;
  std::string protected_column;
  // Value of the protected column mapped to label 1. When empty, the
  // lexicographically larger of the two values is used.
  std::string positive_label;
  std::vector<std::string> drop_columns;
  // Optional column used for row ids; excluded from features.
  std::string id_column;
  Scaling scale = Scaling::kMinMax;
  char delimiter = ',';
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;  // 1-based source line of each row
};

// RFC 4180 reader: quoted fields, doubled quotes, CRLF, embedded delimiters
// and newlines inside quotes. Blank lines are skipped.
CsvTable ReadCsv(const std::string& path, char delimiter = ',');
CsvTable ParseCsv(const std::string& text, char delimiter = ',');

// Loads, one-hot encodes categorical columns (levels sorted), scales numeric
// columns and splits off the protected attribute.
Dataset LoadCsv(const DatasetSpec& spec);
Dataset DatasetFromTable(const CsvTable& table, const DatasetSpec& spec);

// Balance of the whole dataset. Throws DataError(kSingleGroup) when one group
// is absent.
BalanceRatio DatasetBalance(const Dataset& data);

}  // namespace faircap

#endif  // FAIRCAP_INGEST_H_
