// include/ttslabel/decode.h

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

#ifndef TTSLABEL_DECODE_H_
#define TTSLABEL_DECODE_H_

#include <memory>
#include <span>
#include <vector>

#include "ttslabel/label.h"
#include "ttslabel/model.h"

namespace ttslabel {

// Step-by-step decoder with cached self-attention keys/values. Encodes the
// input once at construction.
template <typename Real>
class IncrementalDecoder {
 public:
  struct State {
    std::vector<std::vector<Real>> keys, values;  // per layer, [t, d_model]
    int length = 0;
  };

  IncrementalDecoder(const AnnotatorModel<Real> &model, const AcousticFeatures &x);

  State Start() const;
  // Feeds `token` at the next position and returns log p(. | prefix, X).
  std::vector<Real> Step(State *state, int token) const;

 private:
  const AnnotatorModel<Real> &model_;
  int n_frames_;
  // Cross-attention keys/values per decoder layer, [n_frames, d_model].
  std::vector<std::vector<Real>> cross_keys_, cross_values_;
};

enum class SearchMode { kGreedy, kBeam };

struct DecodeOptions {
  SearchMode mode = SearchMode::kGreedy;
  int beam = 4;
  int max_len = 0;  // generated tokens after <s>; 0 means max_tgt_len - 1
  bool length_norm = false;
};

struct Hypothesis {
  std::vector<int> ids;  // starts with <s>; ends with </s> when finished
  double score = 0.0;    // sum of token log-probabilities
  bool finished = false;
};

template <typename Real>
Hypothesis GreedySearch(const AnnotatorModel<Real> &model, const AcousticFeatures &x,
                        int max_len);

template <typename Real>
Hypothesis BeamSearch(const AnnotatorModel<Real> &model, const AcousticFeatures &x,
                      int beam, int max_len, bool length_norm = false);

struct RepairResult {
  TtsLabelSequence labels;
  bool repaired = false;
};

// Turns raw ids (after <s>, up to </s>) into a well-formed label sequence:
// leading or doubled prosody labels and control ids are dropped, a mora
// followed by a mora receives Pad, and a trailing unpaired mora is dropped.
RepairResult RepairTokens(std::span<const int> ids, const Vocabulary &vocab);

struct Annotation {
  TtsLabelSequence labels;
  bool repaired = false;
  Hypothesis raw;
};

template <typename Real>
Annotation Annotate(const AnnotatorModel<Real> &model, const AcousticFeatures &x,
                    const DecodeOptions &options = {});

}  // namespace ttslabel

#endif  // TTSLABEL_DECODE_H_
