// src/cascade.cc

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

#include "ttslabel/cascade.h"

#include "ttslabel/error.h"

namespace ttslabel {

namespace {

// Greedy longest-match spelling; unmatched bytes are skipped.
PhonemeSeq SpellOut(const std::string &word, const MoraInventory &inventory) {
  PhonemeSeq out;
  std::size_t pos = 0;
  while (pos < word.size()) {
    std::size_t best = 0;
    for (const auto &t : inventory.tokens()) {
      if (t.size() > best && word.compare(pos, t.size(), t) == 0) best = t.size();
    }
    if (best == 0) {
      ++pos;
      continue;
    }
    out.push_back(word.substr(pos, best));
    pos += best;
  }
  if (out.empty() && !inventory.tokens().empty()) out.push_back(inventory.tokens()[0]);
  return out;
}

}  // namespace

TextProcessResult TextProcess(std::span<const std::string> graphemes, const Lexicon &lex,
                              ResolutionPolicy policy) {
  if (graphemes.empty()) throw Error(ErrorCode::kEmptySequence, "no words to process");
  TextProcessResult res;
  for (std::size_t w = 0; w < graphemes.size(); ++w) {
    const LexEntry *e = lex.Find(graphemes[w]);
    if (e == nullptr) {
      ++res.n_fallback;
      for (auto &m : SpellOut(graphemes[w], lex.inventory()))
        res.labels.items.push_back({std::move(m), Prosody::kPad});
    } else {
      const std::size_t r = policy == ResolutionPolicy::kMajorityPrior ? e->MajorityIndex() : 0;
      const auto &reading = e->readings[r];
      for (std::size_t k = 0; k < reading.phonemes.size(); ++k)
        res.labels.items.push_back({reading.phonemes[k], reading.prosody[k]});
    }
    if (w + 1 < graphemes.size()) res.labels.items.back().prosody = Prosody::kPhraseBoundary;
  }
  return res;
}

TextProcessResult CascadeAnnotate(std::span<const std::string> graphemes, const Lexicon &lex,
                                  ResolutionPolicy policy, double err_rate,
                                  std::uint64_t seed) {
  const auto heard = AsrSurrogate(graphemes, lex, err_rate, seed);
  return TextProcess(heard, lex, policy);
}

}  // namespace ttslabel
