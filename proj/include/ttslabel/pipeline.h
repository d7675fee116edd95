// include/ttslabel/pipeline.h

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

#ifndef TTSLABEL_PIPELINE_H_
#define TTSLABEL_PIPELINE_H_

// Glue shared by the command-line tool and the experiment recipes: run
// configuration, the generated world on disk, batch annotation and the two
// scripted comparisons.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "ttslabel/augment.h"
#include "ttslabel/cascade.h"
#include "ttslabel/config.h"
#include "ttslabel/decode.h"
#include "ttslabel/metrics.h"
#include "ttslabel/model.h"
#include "ttslabel/synth.h"
#include "ttslabel/train.h"
#include "ttslabel/vocab.h"

namespace ttslabel {

using LogFn = std::function<void(const std::string &)>;

struct RunConfig {
  std::uint64_t seed = 1;
  int jobs = 1;
  ProsodySet excluded = DefaultExcludedLabels();

  LexiconConfig lexicon;
  CorpusConfig corpus;
  SpeakerParams speaker;
  int n_train = 2000;
  int n_val = 100;
  int n_test = 1000;
  int n_text = 2000;  // held-out text-only sentences

  ModelConfig model;
  TrainConfig train;
  DecodeOptions decode;
  double asr_err_rate = 0.05;
  ResolutionPolicy policy = ResolutionPolicy::kMajorityPrior;
  AugmentConfig augment;

  RunConfig();

  // Keys as printed by ToKeyValue; unknown keys throw kInvalidConfig.
  static RunConfig FromKeyValue(const KeyValueConfig &kv);
  KeyValueConfig ToKeyValue() const;
  void Validate() const;
};

// Seeds of the individual streams, all derived from RunConfig::seed.
struct RunSeeds {
  std::uint64_t lexicon, train, val, test, text, model_init, training, asr, augment;
  explicit RunSeeds(std::uint64_t seed);
};

struct World {
  MoraInventory inventory;
  Lexicon lexicon;
  SpeakerParams speaker;
  std::vector<LabeledUtterance> train, val, test;
  std::vector<std::vector<std::string>> text;
};

World GenerateWorld(const RunConfig &cfg, const LogFn &log = nullptr);

// Layout: inventory.txt, lexicon.tsv, speaker.cfg, text.txt and the corpus
// directories train/, val/, test/.
void WriteWorld(const std::filesystem::path &dir, const World &world);
MoraInventory ReadInventory(const std::filesystem::path &dir);
Lexicon ReadLexicon(const std::filesystem::path &dir, const MoraInventory &inventory);

std::vector<Example> MakeExamples(const std::vector<LabeledUtterance> &utts,
                                  const Vocabulary &vocab);

TrainResult TrainAnnotator(const RunConfig &cfg, const Vocabulary &vocab,
                           const std::vector<LabeledUtterance> &train,
                           const std::vector<LabeledUtterance> &val,
                           const LogFn &log = nullptr);

// Order-preserving; `jobs` threads share the read-only model.
std::vector<Annotation> AnnotateAll(const AnnotatorModel<float> &model,
                                    const std::vector<LabeledUtterance> &utts,
                                    const DecodeOptions &options, int jobs);

// Utterance i uses ASR seed DeriveSeed(seed, i).
std::vector<TtsLabelSequence> CascadeAll(const std::vector<LabeledUtterance> &utts,
                                         const Lexicon &lex, ResolutionPolicy policy,
                                         double err_rate, std::uint64_t seed);

std::vector<TtsLabelSequence> Labels(const std::vector<LabeledUtterance> &utts);

// For each reference mora, the index of the hypothesis mora it is matched to
// by a minimum-edit alignment, or -1 when it is substituted or deleted. Ties
// prefer matches, then substitutions, then deletions.
std::vector<int> AlignMoras(const PhonemeSeq &ref, const PhonemeSeq &hyp);

// Accuracy over every homograph token of the references. A token is correct
// when the hypothesis reproduces the word's phonemes and its word-internal
// prosody (all moras but the last, whose label marks the word boundary).
// Hypothesis moras are placed against the reference by a minimum-edit
// alignment, so an error elsewhere in the sentence does not affect the word;
// any edit inside the word's span makes it wrong.
struct HomographScore {
  std::size_t tokens = 0;
  std::size_t correct = 0;
  std::size_t mora_errors = 0;  // tokens with an edit inside their span
  double accuracy() const {
    return tokens == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(tokens);
  }
};
HomographScore HomographAccuracy(const Lexicon &lex, const std::vector<LabeledUtterance> &refs,
                                 const std::vector<TtsLabelSequence> &hyps);

// System names ordered by prosody F1, then CER.
std::vector<std::string> RankSystems(const EvalReport &report);

struct HomographExperiment {
  EvalReport report;  // systems annt, gt-nlp, asr-nlp
  std::vector<HomographScore> homograph;  // same order as report.models
  std::vector<std::string> ranking;
  std::size_t n_repaired = 0;
  TrainResult training;
};
HomographExperiment RunHomographExperiment(const RunConfig &cfg, const World &world,
                                           const LogFn &log = nullptr);
std::string FormatHomographExperiment(const HomographExperiment &e);

struct AugmentExperiment {
  EvalReport report;  // systems base, augmented
  std::size_t k = 0, k_prime = 0, n_merged = 0;
  SpeakerParams fitted;
  double relative_cer_reduction = 0.0;
  TrainResult base_training, augmented_training;
};
AugmentExperiment RunAugmentExperiment(const RunConfig &cfg, const World &world,
                                       const LogFn &log = nullptr);
std::string FormatAugmentExperiment(const AugmentExperiment &e);

}  // namespace ttslabel

#endif  // TTSLABEL_PIPELINE_H_
