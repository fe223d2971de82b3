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

#ifndef FAIRCAP_ERROR_H_
#define FAIRCAP_ERROR_H_

#include <stdexcept>
#include <string>

namespace faircap {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (dimension mismatch, k out of
// range, partial maps, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// The requested fairness or capacity constraints cannot be met for the given
// input. Recoverable: callers usually retry with a looser epsilon or t.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Thresholds outside the supported family (t = 1/m).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

enum class DataErrorKind {
  kIo,
  kEmptyFile,
  kMissingColumn,
  kProtectedValues,
  kUnparseableNumber,
  kMissingValue,
  kRaggedRow,
  kSingleGroup,
};

const char* DataErrorKindName(DataErrorKind kind);

// Problems with input data files or their contents.
class DataError : public Error {
 public:
  DataError(DataErrorKind kind, const std::string& message)
      : Error(std::string(DataErrorKindName(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  DataErrorKind kind() const { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const { return detail_; }

 private:
  DataErrorKind kind_;
  std::string detail_;
};

// Malformed experiment configuration. `line` is 0 when the problem is not
// tied to a specific line (e.g. a required key is absent).
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace faircap

#endif  // FAIRCAP_ERROR_H_
