// include/ttslabel/metrics.h

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

#ifndef TTSLABEL_METRICS_H_
#define TTSLABEL_METRICS_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ttslabel/label.h"

namespace ttslabel {

// Unit-cost edit distance, two-row dynamic programme.
template <typename Token>
std::size_t Levenshtein(std::span<const Token> a, std::span<const Token> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline std::size_t Levenshtein(const PhonemeSeq &a, const PhonemeSeq &b) {
  return Levenshtein<std::string>(std::span<const std::string>(a),
                                  std::span<const std::string>(b));
}

// Throws kEmptyReference when ref is empty.
double Cer(const PhonemeSeq &ref, const PhonemeSeq &hyp);

struct ProsodyScore {
  std::size_t tp = 0, fp = 0, fn = 0;
  double precision = 1.0, recall = 1.0, f1 = 1.0;
};

// Micro-averaged prosody scoring with Pad as background. Positions where
// either side carries an excluded label are skipped. Each pair must be
// position-aligned (kLengthMismatch otherwise). With no in-scope labels on
// either side the score is 1 by convention.
ProsodyScore ProsodyF1(std::span<const std::pair<ProsodySeq, ProsodySeq>> pairs,
                       const ProsodySet &excluded);

// Adds one aligned pair's counts to `score` without finalizing ratios.
void AccumulateProsody(const ProsodySeq &ref, const ProsodySeq &hyp,
                       const ProsodySet &excluded, ProsodyScore *score);
void FinalizeProsody(ProsodyScore *score);

struct ModelOutputs {
  std::string name;
  std::vector<TtsLabelSequence> outputs;
};

struct ModelEval {
  std::string name;
  std::size_t edits = 0;
  std::size_t ref_moras = 0;
  double cer = 0.0;           // total edits / total reference moras
  double cer_utt_mean = 0.0;  // mean of per-utterance CER
  std::size_t n_phoneme_exact = 0;
  ProsodyScore prosody;       // over the all-models phoneme-exact subset
};

struct EvalReport {
  std::vector<ModelEval> models;
  std::size_t n_total = 0;
  std::size_t n_phoneme_exact_all_models = 0;
  std::vector<std::size_t> subset;  // indices into the reference list
  ProsodySet excluded;
};

inline ProsodySet DefaultExcludedLabels() {
  return {Prosody::kPause, Prosody::kQuestion};
}

// CER per model over every sample; prosody scores only on samples whose
// phoneme stream is exact for every model. Throws kRaggedInputs when a
// model's output count differs from the reference count.
EvalReport EvaluationProtocol(const std::vector<TtsLabelSequence> &refs,
                              const std::vector<ModelOutputs> &models,
                              const ProsodySet &excluded);

// key = value lines.
std::string FormatReportText(const EvalReport &report);
// Header plus one row per model.
std::string FormatReportCsv(const EvalReport &report);

}  // namespace ttslabel

#endif  // TTSLABEL_METRICS_H_
