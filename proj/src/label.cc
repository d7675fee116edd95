// src/label.cc

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

#include "ttslabel/label.h"

#include <cctype>
#include <fstream>
#include <unordered_set>

#include "ttslabel/error.h"

namespace ttslabel {

char ProsodySymbol(Prosody p) {
  switch (p) {
    case Prosody::kPause: return '_';
    case Prosody::kRise: return '[';
    case Prosody::kFall: return ']';
    case Prosody::kPhraseBoundary: return '#';
    case Prosody::kQuestion: return '?';
    case Prosody::kPad: return '*';
  }
  return '*';
}

std::string_view ProsodyName(Prosody p) {
  switch (p) {
    case Prosody::kPause: return "Pause";
    case Prosody::kRise: return "Rise";
    case Prosody::kFall: return "Fall";
    case Prosody::kPhraseBoundary: return "PhraseBoundary";
    case Prosody::kQuestion: return "Question";
    case Prosody::kPad: return "Pad";
  }
  return "Pad";
}

std::optional<Prosody> ProsodyFromSymbol(std::string_view token) {
  if (token.size() != 1) return std::nullopt;
  for (Prosody p : kAllProsody) {
    if (ProsodySymbol(p) == token[0]) return p;
  }
  return std::nullopt;
}

bool IsProsodySymbol(std::string_view token) {
  return ProsodyFromSymbol(token).has_value();
}

std::vector<Prosody> ProsodySet::ToVector() const {
  std::vector<Prosody> out;
  for (Prosody p : kAllProsody) {
    if (Contains(p)) out.push_back(p);
  }
  return out;
}

std::string ProsodySet::ToString() const {
  std::string out;
  for (Prosody p : ToVector()) {
    if (!out.empty()) out += ',';
    out += ProsodySymbol(p);
  }
  return out;
}

ProsodySet ProsodySet::Parse(std::string_view csv) {
  ProsodySet set;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view item = csv.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
      item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
      item.remove_suffix(1);
    if (!item.empty()) {
      auto p = ProsodyFromSymbol(item);
      if (!p) throw Error(ErrorCode::kUnknownToken,
                          "not a prosody symbol: '" + std::string(item) + "'");
      set.Insert(*p);
    }
    start = end + 1;
  }
  return set;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

void CheckTokenSet(const std::vector<std::string> &tokens) {
  std::unordered_set<std::string> seen;
  for (const auto &t : tokens) {
    if (IsProsodySymbol(t))
      throw Error(ErrorCode::kDuplicateToken,
                  "token '" + t + "' collides with a prosody symbol");
    if (!seen.insert(t).second)
      throw Error(ErrorCode::kDuplicateToken, "duplicate token '" + t + "'");
  }
}

MoraInventory::MoraInventory(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  for (const auto &t : tokens_) {
    if (t.empty()) throw Error(ErrorCode::kFormat, "empty mora token");
    for (char c : t) {
      if (std::isspace(static_cast<unsigned char>(c)))
        throw Error(ErrorCode::kFormat, "mora token contains whitespace");
    }
  }
  CheckTokenSet(tokens_);
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    index_.emplace(tokens_[i], static_cast<int>(i));
}

MoraInventory MoraInventory::Default() {
  return MoraInventory({"a",  "i",  "u",   "e",  "o",  "ka", "ki", "ku",
                        "ke", "ko", "sa",  "shi", "su", "se", "so", "ta",
                        "te", "to", "na",  "ni", "no", "ha", "ma", "me",
                        "mo", "ra", "ri",  "ru", "ze", "be"});
}

MoraInventory MoraInventory::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    auto parts = SplitWhitespace(line);
    if (parts.empty()) continue;
    if (parts.size() != 1)
      throw Error(ErrorCode::kFormat, "inventory line has several tokens: " + line);
    tokens.push_back(parts[0]);
  }
  return MoraInventory(std::move(tokens));
}

void MoraInventory::Save(const std::filesystem::path &path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto &t : tokens_) out << t << '\n';
}

bool MoraInventory::Contains(std::string_view token) const {
  return index_.find(std::string(token)) != index_.end();
}

int MoraInventory::IndexOf(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? -1 : it->second;
}

TtsLabelSequence ParseLabelString(std::string_view text,
                                  const MoraInventory &inventory) {
  const auto tokens = SplitWhitespace(text);
  if (tokens.empty())
    throw Error(ErrorCode::kGrammarViolation, "empty label string");
  TtsLabelSequence seq;
  bool expect_mora = true;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string &tok = tokens[i];
    auto prosody = ProsodyFromSymbol(tok);
    if (!prosody && !inventory.Contains(tok))
      throw Error(ErrorCode::kUnknownToken, "unknown token '" + tok + "'");
    if (expect_mora) {
      if (prosody)
        throw Error(ErrorCode::kGrammarViolation,
                    "prosody label '" + tok + "' at token " + std::to_string(i) +
                        " has no mora");
      seq.items.push_back({tok, Prosody::kPad});
    } else {
      if (!prosody)
        throw Error(ErrorCode::kGrammarViolation,
                    "mora '" + tok + "' at token " + std::to_string(i) +
                        " follows a mora");
      seq.items.back().prosody = *prosody;
    }
    expect_mora = !expect_mora;
  }
  if (!expect_mora)
    throw Error(ErrorCode::kGrammarViolation,
                "odd token count: final mora '" + tokens.back() +
                    "' has no prosody label");
  return seq;
}

std::string Serialize(const TtsLabelSequence &seq) {
  std::string out;
  for (const auto &item : seq.items) {
    if (!out.empty()) out += ' ';
    out += item.mora;
    out += ' ';
    out += ProsodySymbol(item.prosody);
  }
  return out;
}

std::pair<PhonemeSeq, ProsodySeq> SplitStreams(const TtsLabelSequence &seq) {
  PhonemeSeq ph;
  ProsodySeq ps;
  ph.reserve(seq.size());
  ps.reserve(seq.size());
  for (const auto &item : seq.items) {
    ph.push_back(item.mora);
    ps.push_back(item.prosody);
  }
  return {std::move(ph), std::move(ps)};
}

TtsLabelSequence JoinStreams(const PhonemeSeq &phonemes,
                             const ProsodySeq &prosody) {
  if (phonemes.size() != prosody.size())
    throw Error(ErrorCode::kLengthMismatch, "stream lengths differ");
  TtsLabelSequence seq;
  seq.items.reserve(phonemes.size());
  for (std::size_t i = 0; i < phonemes.size(); ++i)
    seq.items.push_back({phonemes[i], prosody[i]});
  return seq;
}

PhonemeSeq StripProsody(const TtsLabelSequence &seq) {
  return SplitStreams(seq).first;
}

std::string_view ViolationName(Violation v) {
  switch (v) {
    case Violation::kEmptySequence: return "EmptySequence";
    case Violation::kEmptyMora: return "EmptyMora";
    case Violation::kTokenCollision: return "TokenCollision";
    case Violation::kUnknownMora: return "UnknownMora";
  }
  return "?";
}

std::vector<Violation> Validate(const TtsLabelSequence &seq,
                                const MoraInventory *inventory) {
  std::vector<Violation> out;
  auto add = [&out](Violation v) {
    for (Violation w : out) {
      if (w == v) return;
    }
    out.push_back(v);
  };
  if (seq.empty()) add(Violation::kEmptySequence);
  for (const auto &item : seq.items) {
    if (item.mora.empty()) {
      add(Violation::kEmptyMora);
    } else if (IsProsodySymbol(item.mora)) {
      add(Violation::kTokenCollision);
    } else if (inventory != nullptr && !inventory->Contains(item.mora)) {
      add(Violation::kUnknownMora);
    }
  }
  return out;
}

}  // namespace ttslabel
