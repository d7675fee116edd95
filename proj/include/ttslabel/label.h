// include/ttslabel/label.h

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

#ifndef TTSLABEL_LABEL_H_
#define TTSLABEL_LABEL_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ttslabel {

// Per-mora prosodic status. Five pitch-accent categories plus a padding
// label for moras that carry none of them.
enum class Prosody : std::uint8_t {
  kPause,           // "_"
  kRise,            // "["  low to high accent change
  kFall,            // "]"  high to low accent change
  kPhraseBoundary,  // "#"  accentual phrase boundary
  kQuestion,        // "?"  rising boundary pitch movement
  kPad,             // "*"
};

inline constexpr std::array<Prosody, 6> kAllProsody = {
    Prosody::kPause,          Prosody::kRise,     Prosody::kFall,
    Prosody::kPhraseBoundary, Prosody::kQuestion, Prosody::kPad};

char ProsodySymbol(Prosody p);
std::string_view ProsodyName(Prosody p);
std::optional<Prosody> ProsodyFromSymbol(std::string_view token);
bool IsProsodySymbol(std::string_view token);

// Small set over the six prosody labels.
class ProsodySet {
 public:
  ProsodySet() = default;
  ProsodySet(std::initializer_list<Prosody> labels) {
    for (Prosody p : labels) Insert(p);
  }
  void Insert(Prosody p) { bits_ |= Bit(p); }
  bool Contains(Prosody p) const { return (bits_ & Bit(p)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::vector<Prosody> ToVector() const;
  // Comma separated symbols, e.g. "_,?".
  std::string ToString() const;
  static ProsodySet Parse(std::string_view csv);
  bool operator==(const ProsodySet &) const = default;

 private:
  static std::uint8_t Bit(Prosody p) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(p));
  }
  std::uint8_t bits_ = 0;
};

using PhonemeSeq = std::vector<std::string>;
using ProsodySeq = std::vector<Prosody>;

struct LabelPair {
  std::string mora;
  Prosody prosody = Prosody::kPad;
  bool operator==(const LabelPair &) const = default;
};

// Mixed phonemic/prosodic label sequence: one prosody label per mora.
struct TtsLabelSequence {
  std::vector<LabelPair> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  bool operator==(const TtsLabelSequence &) const = default;
};

// Ordered set of mora tokens. Tokens are arbitrary non-empty UTF-8 strings
// without whitespace that do not collide with a prosody symbol.
class MoraInventory {
 public:
  MoraInventory() = default;
  // Throws kDuplicateToken on repeats or prosody-symbol collisions and
  // kFormat on empty or whitespace-bearing tokens.
  explicit MoraInventory(std::vector<std::string> tokens);

  // 30 ASCII CV syllables.
  static MoraInventory Default();
  // One token per line; blank lines ignored.
  static MoraInventory Load(const std::filesystem::path &path);
  void Save(const std::filesystem::path &path) const;

  bool Contains(std::string_view token) const;
  int IndexOf(std::string_view token) const;  // -1 if absent
  const std::vector<std::string> &tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

// Raises kDuplicateToken when tokens repeat or collide with a prosody symbol.
void CheckTokenSet(const std::vector<std::string> &tokens);

TtsLabelSequence ParseLabelString(std::string_view text,
                                  const MoraInventory &inventory);
std::string Serialize(const TtsLabelSequence &seq);

std::pair<PhonemeSeq, ProsodySeq> SplitStreams(const TtsLabelSequence &seq);
TtsLabelSequence JoinStreams(const PhonemeSeq &phonemes,
                             const ProsodySeq &prosody);
PhonemeSeq StripProsody(const TtsLabelSequence &seq);

enum class Violation {
  kEmptySequence,
  kEmptyMora,
  kTokenCollision,  // mora spelled like a prosody symbol
  kUnknownMora,     // not in the inventory
};
std::string_view ViolationName(Violation v);

// Empty result iff every invariant of TtsLabelSequence holds. The inventory
// check is skipped when `inventory` is null.
std::vector<Violation> Validate(const TtsLabelSequence &seq,
                                const MoraInventory *inventory = nullptr);

std::vector<std::string> SplitWhitespace(std::string_view text);

}  // namespace ttslabel

#endif  // TTSLABEL_LABEL_H_
