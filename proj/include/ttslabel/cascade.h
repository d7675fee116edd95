// include/ttslabel/cascade.h

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

#ifndef TTSLABEL_CASCADE_H_
#define TTSLABEL_CASCADE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ttslabel/label.h"
#include "ttslabel/synth.h"

namespace ttslabel {

// How the text front-end picks a reading for a homograph.
enum class ResolutionPolicy { kMajorityPrior, kFirstEntry };

struct TextProcessResult {
  TtsLabelSequence labels;
  int n_fallback = 0;  // words spelled out because they are not in the lexicon
};

// Deterministic text front-end: lexicon lookup per word, "#" on the last mora
// of every non-final word. Unknown words are spelled greedily by longest
// inventory match over the grapheme, all-Pad prosody.
TextProcessResult TextProcess(std::span<const std::string> graphemes, const Lexicon &lex,
                              ResolutionPolicy policy = ResolutionPolicy::kMajorityPrior);

// ASR surrogate followed by the text front-end. err_rate 0 gives the
// ground-truth-text variant.
TextProcessResult CascadeAnnotate(std::span<const std::string> graphemes, const Lexicon &lex,
                                  ResolutionPolicy policy, double err_rate,
                                  std::uint64_t seed);

}  // namespace ttslabel

#endif  // TTSLABEL_CASCADE_H_
