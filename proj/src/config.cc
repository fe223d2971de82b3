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

#include "faircap/config.h"

#include <fstream>
#include <sstream>

#include "faircap/error.h"

namespace faircap {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

IniDocument IniDocument::Parse(const std::string& text) {
  IniDocument doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  doc.order_.push_back("");
  doc.sections_[""];
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = Trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) {
        throw ConfigError(line, "malformed section header '" + s + "'");
      }
      section = Trim(s.substr(1, s.size() - 2));
      if (doc.sections_.contains(section)) {
        throw ConfigError(line, "duplicate section [" + section + "]");
      }
      doc.sections_[section];
      doc.section_lines_[section] = line;
      doc.order_.push_back(section);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line, "expected 'key = value', got '" + s + "'");
    }
    const std::string key = Trim(s.substr(0, eq));
    if (key.empty()) throw ConfigError(line, "empty key");
    auto& entries = doc.sections_[section];
    if (entries.contains(key)) {
      throw ConfigError(line, "duplicate key '" + key + "' in [" + section +
                                  "] (first on line " +
                                  std::to_string(entries[key].line) + ")");
    }
    entries[key] = Entry{Trim(s.substr(eq + 1)), line};
  }
  return doc;
}

IniDocument IniDocument::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

bool IniDocument::HasSection(const std::string& section) const {
  return section_lines_.contains(section);
}

std::optional<IniDocument::Entry> IniDocument::Get(
    const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  const auto e = s->second.find(key);
  if (e == s->second.end()) return std::nullopt;
  return e->second;
}

int IniDocument::SectionLine(const std::string& section) const {
  const auto it = section_lines_.find(section);
  return it == section_lines_.end() ? 0 : it->second;
}

std::vector<std::string> IniDocument::Keys(const std::string& section) const {
  std::vector<std::string> keys;
  const auto s = sections_.find(section);
  if (s == sections_.end()) return keys;
  for (const auto& [key, entry] : s->second) keys.push_back(key);
  return keys;
}

}  // namespace faircap
