// src/corpus_io.cc

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

#include "ttslabel/corpus_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ttslabel/error.h"
#include "ttslabel/features.h"

namespace ttslabel {

using nlohmann::json;

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path &path, const std::string &content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

void WriteCorpus(const std::filesystem::path &dir, const std::vector<LabeledUtterance> &corpus) {
  std::filesystem::create_directories(dir / "feats");
  std::string meta;
  for (const auto &u : corpus) {
    json j;
    j["id"] = u.id;
    j["graphemes"] = u.graphemes;
    j["readings"] = u.readings;
    j["labels"] = Serialize(u.labels);
    j["source"] = u.source;
    j["n_frames"] = u.features.n_frames;
    meta += j.dump() + "\n";
    WriteFeatures(dir / "feats" / (u.id + ".bin"), u.features);
  }
  WriteFile(dir / "metadata.jsonl", meta);
}

std::vector<LabeledUtterance> ReadCorpus(const std::filesystem::path &dir,
                                         const MoraInventory &inventory) {
  std::istringstream in(ReadFile(dir / "metadata.jsonl"));
  std::vector<LabeledUtterance> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    LabeledUtterance u;
    try {
      const json j = json::parse(line);
      u.id = j.at("id").get<std::string>();
      u.graphemes = j.at("graphemes").get<std::vector<std::string>>();
      u.readings = j.at("readings").get<std::vector<int>>();
      u.source = j.value("source", std::string("labeled"));
      u.labels = ParseLabelString(j.at("labels").get<std::string>(), inventory);
      const int n_frames = j.at("n_frames").get<int>();
      u.features = ReadFeatures(dir / "feats" / (u.id + ".bin"));
      if (u.features.n_frames != n_frames)
        throw Error(ErrorCode::kFormat, "frame count mismatch for " + u.id);
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kFormat, (dir / "metadata.jsonl").string() + ":" +
                                          std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(u));
  }
  return out;
}

void WriteLabelTable(const std::filesystem::path &path, const LabelTable &table) {
  std::string s;
  for (const auto &[id, labels] : table) s += id + "\t" + Serialize(labels) + "\n";
  WriteFile(path, s);
}

LabelTable ReadLabelTable(const std::filesystem::path &path, const MoraInventory &inventory) {
  std::istringstream in(ReadFile(path));
  LabelTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::kFormat, "label table line without a tab in " + path.string());
    // An empty field is a legitimate (fully repaired-away) hypothesis.
    const std::string field = line.substr(tab + 1);
    table.emplace_back(line.substr(0, tab), SplitWhitespace(field).empty()
                                                ? TtsLabelSequence{}
                                                : ParseLabelString(field, inventory));
  }
  return table;
}

void WriteTextPool(const std::filesystem::path &path,
                   const std::vector<std::vector<std::string>> &pool) {
  std::string s;
  for (const auto &words : pool) s += JoinWords(words) + "\n";
  WriteFile(path, s);
}

std::vector<std::vector<std::string>> ReadTextPool(const std::filesystem::path &path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::vector<std::string>> pool;
  std::string line;
  while (std::getline(in, line)) {
    auto words = SplitWhitespace(line);
    if (!words.empty()) pool.push_back(std::move(words));
  }
  return pool;
}

}  // namespace ttslabel
