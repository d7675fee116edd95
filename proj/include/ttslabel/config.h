// include/ttslabel/config.h

// Copyright 2026  ttslabel authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TTSLABEL_CONFIG_H_
#define TTSLABEL_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ttslabel {

// Plain "key = value" text; '#' starts a comment, blank lines are ignored.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  // Throws kIo, or kInvalidConfig on malformed lines and repeated keys.
  static KeyValueConfig Load(const std::filesystem::path &path);
  static KeyValueConfig Parse(const std::string &text);

  bool Has(const std::string &key) const { return values_.count(key) > 0; }
  std::optional<std::string> Get(const std::string &key) const;
  std::string GetString(const std::string &key, const std::string &def) const;
  int GetInt(const std::string &key, int def) const;
  double GetDouble(const std::string &key, double def) const;
  bool GetBool(const std::string &key, bool def) const;
  std::uint64_t GetU64(const std::string &key, std::uint64_t def) const;

  void Set(const std::string &key, const std::string &value) { values_[key] = value; }
  // Throws kInvalidConfig naming the first key outside `known`.
  void CheckKnown(const std::vector<std::string> &known) const;

  std::string ToString() const;
  const std::map<std::string, std::string> &values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Shortest decimal text that reads back to the same double.
std::string FormatDouble(double v);

}  // namespace ttslabel

#endif  // TTSLABEL_CONFIG_H_
