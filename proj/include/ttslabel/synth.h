// include/ttslabel/synth.h

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

#ifndef TTSLABEL_SYNTH_H_
#define TTSLABEL_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ttslabel/features.h"
#include "ttslabel/label.h"

namespace ttslabel {

// Feature layout produced by Articulate.
inline constexpr int kEmbedDims = 8;
inline constexpr int kPitchChannel = 8;
inline constexpr int kEnergyChannel = 9;
inline constexpr int kOnsetChannel = 10;  // 1 on the first frame of each mora
inline constexpr int kNoiseChannel = 11;  // carries noise only
inline constexpr int kFeatureDim = 12;

struct Reading {
  PhonemeSeq phonemes;
  ProsodySeq prosody;
  double weight = 1.0;
  bool operator==(const Reading &) const = default;
};

struct LexEntry {
  std::string grapheme;
  std::vector<Reading> readings;  // majority reading first

  bool IsHomograph() const { return readings.size() >= 2; }
  // All readings share one phoneme sequence.
  bool ProsodyOnly() const;
  std::size_t MajorityIndex() const;
  bool operator==(const LexEntry &) const = default;
};

class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(MoraInventory inventory, std::vector<LexEntry> entries);

  const MoraInventory &inventory() const { return inventory_; }
  const std::vector<LexEntry> &entries() const { return entries_; }
  const LexEntry *Find(std::string_view grapheme) const;
  int IndexOf(std::string_view grapheme) const;  // -1 if absent
  std::size_t num_homographs() const;
  double homograph_rate() const;

  // "grapheme<TAB>weight<TAB>label string" per reading; readings of one
  // entry are consecutive with the majority first.
  void Save(const std::filesystem::path &path) const;
  static Lexicon Load(const std::filesystem::path &path, const MoraInventory &inventory);

  bool operator==(const Lexicon &o) const { return entries_ == o.entries_; }

 private:
  MoraInventory inventory_;
  std::vector<LexEntry> entries_;
  std::unordered_map<std::string, int> index_;
};

struct LexiconConfig {
  int n_words = 100;
  double homograph_rate = 0.2;
  double majority_share = 0.7;
  // Fraction of homographs whose readings share phonemes and differ only in
  // prosody; the rest differ in both streams.
  double prosody_only_fraction = 0.5;
  int min_moras = 2;
  int max_moras = 4;
};

// Throws kInvalidRate.
Lexicon GenerateLexicon(const LexiconConfig &cfg, const MoraInventory &inventory,
                        std::uint64_t seed);

// Word-level lexical prosody for accent type `type` over `n` moras: type 0
// rises after the first mora, type 1 falls after it, type k >= 2 rises after
// the first and falls after mora k. The final mora is always Pad.
ProsodySeq AccentPattern(int n, int type);

// The articulation model's parameters (the auxiliary synthesizer).
struct SpeakerParams {
  double pitch_base = 1.0;
  double rise_delta = 0.8;
  double fall_delta = 0.8;
  int tempo_min = 2;  // frames per mora
  int tempo_max = 5;
  double noise_sigma = 0.05;

  // Throws kInvalidConfig.
  void Validate() const;
  bool operator==(const SpeakerParams &) const = default;
};

void SaveSpeaker(const std::filesystem::path &path, const SpeakerParams &sp);
SpeakerParams LoadSpeaker(const std::filesystem::path &path);

// Fixed per-mora embedding in [-1, 1]^8, a pure function of the token.
std::vector<float> MoraEmbedding(std::string_view mora);
// Frames for one mora: tempo_min + hash(mora) mod (tempo_max - tempo_min + 1).
int MoraDuration(std::string_view mora, const SpeakerParams &sp);

// Renders a label sequence to frames. Pitch holds a level that steps up by
// rise_delta on the last frame of a Rise mora, down by fall_delta on the last
// frame of a Fall mora, returns to pitch_base on the last frame of a phrase
// boundary (whose energy drops to 0.5), ramps up over a Question mora and
// holds flat under a Pause (energy 0). Gaussian noise is added last.
AcousticFeatures Articulate(const TtsLabelSequence &y, const SpeakerParams &sp,
                            std::uint64_t seed);

// Inverse of Articulate for clean or lightly noisy input.
TtsLabelSequence InvertFeatures(const AcousticFeatures &x, const SpeakerParams &sp,
                                const MoraInventory &inventory);

struct LabeledUtterance {
  std::string id;
  std::vector<std::string> graphemes;
  std::vector<int> readings;  // reading index per word; -1 when unknown
  TtsLabelSequence labels;
  AcousticFeatures features;
  std::string source = "labeled";
};

// Estimates the articulation parameters from labeled pairs by least squares
// on the pitch channel, duration extremes and the noise channel.
// Throws kInsufficientData when fewer than 10 pairs are given.
SpeakerParams FitSpeaker(std::span<const LabeledUtterance> data);

struct CorpusConfig {
  int words_min = 2;
  int words_max = 5;
  // Probability that a word slot draws a homograph; negative means uniform
  // sampling over the lexicon.
  double homograph_token_share = -1.0;
  // Word boundaries realized without a phrase break (Pad instead of "#").
  double phrase_merge_rate = 0.0;
  double pause_rate = 0.0;     // boundary realized as a pause
  double question_rate = 0.0;  // utterance ends in a question rise
  std::string id_prefix = "utt";
};

struct WordDraw {
  int entry = 0;
  int reading = 0;
};

// Word and reading choices for utterance `index`.
std::vector<WordDraw> SampleWords(const Lexicon &lex, const CorpusConfig &cfg,
                                  std::uint64_t seed, std::size_t index);

// Concatenated readings with boundary labels. `boundary_seed` drives merge,
// pause and question draws.
TtsLabelSequence ComposeLabels(const Lexicon &lex, std::span<const WordDraw> words,
                               const CorpusConfig &cfg, std::uint64_t boundary_seed);

LabeledUtterance GenerateUtterance(const Lexicon &lex, const CorpusConfig &cfg,
                                   const SpeakerParams &sp, std::uint64_t seed,
                                   std::size_t index);

// Utterances 0..n_utts-1; each is a pure function of (lexicon, cfg, speaker,
// seed, index). `jobs` > 1 generates in parallel with identical output.
std::vector<LabeledUtterance> GenerateCorpus(const Lexicon &lex, std::size_t n_utts,
                                             const CorpusConfig &cfg,
                                             const SpeakerParams &sp, std::uint64_t seed,
                                             int jobs = 1);

// Grapheme sequences only, drawn like corpus sentences; sentences present in
// `exclude` are skipped.
std::vector<std::vector<std::string>> GenerateTextPool(
    const Lexicon &lex, std::size_t n, const CorpusConfig &cfg, std::uint64_t seed,
    std::span<const std::vector<std::string>> exclude = {});

// Replaces each word, with probability err_rate, by a different lexicon word
// drawn uniformly. Throws kInvalidRate.
std::vector<std::string> AsrSurrogate(std::span<const std::string> graphemes,
                                      const Lexicon &lex, double err_rate,
                                      std::uint64_t seed);

std::string JoinWords(std::span<const std::string> words);

}  // namespace ttslabel

#endif  // TTSLABEL_SYNTH_H_
