// src/config.cc

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

#include "ttslabel/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ttslabel/error.h"

namespace ttslabel {

namespace {

std::string Trim(const std::string &s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void BadValue(const std::string &key, const std::string &value,
                           const char *type) {
  throw Error(ErrorCode::kInvalidConfig,
              "key '" + key + "': '" + value + "' is not a valid " + type);
}

}  // namespace

KeyValueConfig KeyValueConfig::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

KeyValueConfig KeyValueConfig::Parse(const std::string &text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::kInvalidConfig,
                  "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (key.empty())
      throw Error(ErrorCode::kInvalidConfig, "line " + std::to_string(lineno) + ": empty key");
    if (!cfg.values_.emplace(key, value).second)
      throw Error(ErrorCode::kInvalidConfig, "repeated key '" + key + "'");
  }
  return cfg;
}

std::optional<std::string> KeyValueConfig::Get(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::GetString(const std::string &key, const std::string &def) const {
  return Get(key).value_or(def);
}

int KeyValueConfig::GetInt(const std::string &key, int def) const {
  auto v = Get(key);
  if (!v) return def;
  int out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) BadValue(key, *v, "integer");
  return out;
}

std::uint64_t KeyValueConfig::GetU64(const std::string &key, std::uint64_t def) const {
  auto v = Get(key);
  if (!v) return def;
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) BadValue(key, *v, "integer");
  return out;
}

double KeyValueConfig::GetDouble(const std::string &key, double def) const {
  auto v = Get(key);
  if (!v) return def;
  try {
    std::size_t used = 0;
    const double out = std::stod(*v, &used);
    if (used != v->size()) BadValue(key, *v, "number");
    return out;
  } catch (const std::logic_error &) {
    BadValue(key, *v, "number");
  }
}

bool KeyValueConfig::GetBool(const std::string &key, bool def) const {
  auto v = Get(key);
  if (!v) return def;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  BadValue(key, *v, "boolean");
}

void KeyValueConfig::CheckKnown(const std::vector<std::string> &known) const {
  for (const auto &[key, value] : values_) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + key + "'");
  }
}

std::string KeyValueConfig::ToString() const {
  std::string out;
  for (const auto &[key, value] : values_) out += key + " = " + value + "\n";
  return out;
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char tmp[40];
    std::snprintf(tmp, sizeof(tmp), "%.*g", prec, v);
    if (std::stod(tmp) == v) return tmp;
  }
  return buf;
}

}  // namespace ttslabel
