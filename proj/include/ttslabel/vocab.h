// include/ttslabel/vocab.h

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

#ifndef TTSLABEL_VOCAB_H_
#define TTSLABEL_VOCAB_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ttslabel/label.h"

namespace ttslabel {

inline constexpr const char *kBosToken = "<s>";
inline constexpr const char *kEosToken = "</s>";
inline constexpr const char *kPadToken = "<pad>";

// Mixed phonemic/prosodic vocabulary with three control tokens.
//
// Ids are dense from 0: moras in byte-sorted order, then the prosody labels in
// the order [ ] # _ ? *, then <s> </s> <pad>.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary Build(const MoraInventory &inventory);
  static Vocabulary Build(std::vector<std::string> mora_tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  int bos() const { return bos_; }
  int eos() const { return eos_; }
  int pad() const { return pad_; }
  int num_moras() const { return num_moras_; }

  bool IsMora(int id) const { return id >= 0 && id < num_moras_; }
  bool IsProsody(int id) const {
    return id >= num_moras_ && id < num_moras_ + 6;
  }
  bool IsControl(int id) const { return id >= num_moras_ + 6 && id < size(); }

  std::optional<int> Id(std::string_view token) const;
  const std::string &Token(int id) const;
  int ProsodyId(Prosody p) const;
  Prosody ProsodyOf(int id) const;  // requires IsProsody(id)

  // [<s>, m1, p1, ..., mM, pM, </s>]; throws kEmptySequence, kUnknownToken.
  std::vector<int> Encode(const TtsLabelSequence &seq) const;
  // Reads up to the first </s>; trailing ids are ignored. Throws kMissingEos,
  // kUnknownId or kGrammarViolation.
  TtsLabelSequence Decode(std::span<const int> ids) const;

  // "token<TAB>id" per line.
  void Save(const std::filesystem::path &path) const;
  static Vocabulary Load(const std::filesystem::path &path);

  const std::vector<std::string> &tokens() const { return tokens_; }
  std::vector<std::string> MoraTokens() const {
    return {tokens_.begin(), tokens_.begin() + num_moras_};
  }

  bool operator==(const Vocabulary &o) const { return tokens_ == o.tokens_; }

 private:
  void Index();

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
  int num_moras_ = 0;
  int bos_ = -1, eos_ = -1, pad_ = -1;
};

// Prosody order used for id assignment.
inline constexpr std::array<Prosody, 6> kVocabProsodyOrder = {
    Prosody::kRise,  Prosody::kFall,     Prosody::kPhraseBoundary,
    Prosody::kPause, Prosody::kQuestion, Prosody::kPad};

}  // namespace ttslabel

#endif  // TTSLABEL_VOCAB_H_
