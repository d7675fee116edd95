// src/vocab.cc

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

#include "ttslabel/vocab.h"

#include <algorithm>
#include <fstream>

#include "ttslabel/error.h"

namespace ttslabel {

Vocabulary Vocabulary::Build(const MoraInventory &inventory) {
  return Build(inventory.tokens());
}

Vocabulary Vocabulary::Build(std::vector<std::string> mora_tokens) {
  if (mora_tokens.empty())
    throw Error(ErrorCode::kInvalidConfig, "empty mora inventory");
  CheckTokenSet(mora_tokens);
  for (const auto &t : mora_tokens) {
    if (t == kBosToken || t == kEosToken || t == kPadToken)
      throw Error(ErrorCode::kDuplicateToken,
                  "token '" + t + "' collides with a control token");
  }
  std::sort(mora_tokens.begin(), mora_tokens.end());
  Vocabulary v;
  v.num_moras_ = static_cast<int>(mora_tokens.size());
  v.tokens_ = std::move(mora_tokens);
  for (Prosody p : kVocabProsodyOrder)
    v.tokens_.emplace_back(1, ProsodySymbol(p));
  v.tokens_.emplace_back(kBosToken);
  v.tokens_.emplace_back(kEosToken);
  v.tokens_.emplace_back(kPadToken);
  v.Index();
  return v;
}

void Vocabulary::Index() {
  ids_.clear();
  for (int i = 0; i < size(); ++i) ids_.emplace(tokens_[i], i);
  bos_ = num_moras_ + 6;
  eos_ = num_moras_ + 7;
  pad_ = num_moras_ + 8;
}

std::optional<int> Vocabulary::Id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string &Vocabulary::Token(int id) const {
  if (id < 0 || id >= size())
    throw Error(ErrorCode::kUnknownId, "id " + std::to_string(id));
  return tokens_[id];
}

int Vocabulary::ProsodyId(Prosody p) const {
  for (int i = 0; i < 6; ++i) {
    if (kVocabProsodyOrder[i] == p) return num_moras_ + i;
  }
  return num_moras_ + 5;
}

Prosody Vocabulary::ProsodyOf(int id) const {
  return kVocabProsodyOrder.at(static_cast<std::size_t>(id - num_moras_));
}

std::vector<int> Vocabulary::Encode(const TtsLabelSequence &seq) const {
  if (seq.empty()) throw Error(ErrorCode::kEmptySequence, "nothing to encode");
  std::vector<int> ids;
  ids.reserve(2 * seq.size() + 2);
  ids.push_back(bos_);
  for (const auto &item : seq.items) {
    auto id = Id(item.mora);
    if (!id || !IsMora(*id))
      throw Error(ErrorCode::kUnknownToken, "mora '" + item.mora + "'");
    ids.push_back(*id);
    ids.push_back(ProsodyId(item.prosody));
  }
  ids.push_back(eos_);
  return ids;
}

TtsLabelSequence Vocabulary::Decode(std::span<const int> ids) const {
  if (ids.empty() || ids[0] != bos_)
    throw Error(ErrorCode::kGrammarViolation, "id list does not start with <s>");
  TtsLabelSequence seq;
  bool expect_mora = true;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    const int id = ids[i];
    if (id < 0 || id >= size())
      throw Error(ErrorCode::kUnknownId, "id " + std::to_string(id));
    if (id == eos_) {
      if (!expect_mora)
        throw Error(ErrorCode::kGrammarViolation, "mora without prosody label");
      if (seq.empty())
        throw Error(ErrorCode::kGrammarViolation, "no labels before </s>");
      return seq;
    }
    if (IsControl(id))
      throw Error(ErrorCode::kGrammarViolation,
                  "control token " + tokens_[id] + " inside sequence");
    if (expect_mora) {
      if (!IsMora(id))
        throw Error(ErrorCode::kGrammarViolation,
                    "prosody label at position " + std::to_string(i));
      seq.items.push_back({tokens_[id], Prosody::kPad});
    } else {
      if (!IsProsody(id))
        throw Error(ErrorCode::kGrammarViolation,
                    "two consecutive moras at position " + std::to_string(i));
      seq.items.back().prosody = ProsodyOf(id);
    }
    expect_mora = !expect_mora;
  }
  throw Error(ErrorCode::kMissingEos, "no </s> in id list");
}

void Vocabulary::Save(const std::filesystem::path &path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (int i = 0; i < size(); ++i) out << tokens_[i] << '\t' << i << '\n';
}

Vocabulary Vocabulary::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::kFormat, "vocabulary line without tab: " + line);
    const int id = std::stoi(line.substr(tab + 1));
    if (id != static_cast<int>(tokens.size()))
      throw Error(ErrorCode::kFormat, "vocabulary ids are not dense");
    tokens.push_back(line.substr(0, tab));
  }
  if (tokens.size() < 10)
    throw Error(ErrorCode::kFormat, "vocabulary too small");
  std::vector<std::string> moras(tokens.begin(), tokens.end() - 9);
  Vocabulary v = Build(moras);
  if (v.tokens_ != tokens)
    throw Error(ErrorCode::kFormat, "vocabulary file is not in canonical order");
  return v;
}

}  // namespace ttslabel
