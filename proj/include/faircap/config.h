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

#ifndef FAIRCAP_CONFIG_H_
#define FAIRCAP_CONFIG_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace faircap {

// Flat INI-style document: "[section]" headers, "key = value" lines, '#' or
// ';' comments. Keys before the first header belong to section "". Every
// entry remembers its source line for diagnostics.
class IniDocument {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static IniDocument Parse(const std::string& text);
  static IniDocument Load(const std::string& path);

  bool HasSection(const std::string& section) const;
  std::optional<Entry> Get(const std::string& section,
                           const std::string& key) const;
  // Line of the section header, 0 if absent.
  int SectionLine(const std::string& section) const;

  std::vector<std::string> Sections() const { return order_; }
  std::vector<std::string> Keys(const std::string& section) const;

 private:
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::map<std::string, int> section_lines_;
  std::vector<std::string> order_;
};

}  // namespace faircap

#endif  // FAIRCAP_CONFIG_H_
