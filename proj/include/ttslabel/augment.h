// include/ttslabel/augment.h

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

#ifndef TTSLABEL_AUGMENT_H_
#define TTSLABEL_AUGMENT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ttslabel/cascade.h"
#include "ttslabel/synth.h"

namespace ttslabel {

struct AugmentConfig {
  int n_labeled = 200;     // K
  int n_text = 2000;       // K'
  ResolutionPolicy policy = ResolutionPolicy::kMajorityPrior;
  // Noise of the auxiliary synthesizer; negative keeps the fitted value.
  double aux_noise_sigma = -1.0;
  bool dedupe = false;
  // Copies of the real pairs in the merged training set; 1 is plain
  // concatenation.
  int real_repeat = 1;

  void Validate() const;
};

std::vector<TtsLabelSequence> MakePseudoLabels(
    std::span<const std::vector<std::string>> graphemes, const Lexicon &lex,
    ResolutionPolicy policy);

// Items are tagged source "augmented" and get ids "aug%06d"; graphemes are
// carried along when given (same length as labels) and readings are -1.
std::vector<LabeledUtterance> SynthesizeAugmented(
    std::span<const TtsLabelSequence> labels, const SpeakerParams &sp, std::uint64_t seed,
    std::span<const std::vector<std::string>> graphemes = {}, int jobs = 1);

// Concatenation; with dedupe, later items whose label string was already
// seen are dropped. Throws kDimMismatch.
std::vector<LabeledUtterance> Merge(std::span<const LabeledUtterance> d,
                                    std::span<const LabeledUtterance> d_aug, bool dedupe);

struct AugmentResult {
  SpeakerParams speaker;  // as fitted, before any noise override
  std::vector<LabeledUtterance> augmented;
};

// Fit the auxiliary synthesizer on d, pseudo-label the text, synthesize.
AugmentResult RunAugmentation(std::span<const LabeledUtterance> d,
                              std::span<const std::vector<std::string>> text,
                              const Lexicon &lex, const AugmentConfig &cfg,
                              std::uint64_t seed, int jobs = 1);

}  // namespace ttslabel

#endif  // TTSLABEL_AUGMENT_H_
