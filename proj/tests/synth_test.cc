// tests/synth_test.cc

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

#include "ttslabel/synth.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "test_util.h"

namespace ttslabel {
namespace {

const MoraInventory &Inv() {
  static const MoraInventory inv = MoraInventory::Default();
  return inv;
}

Lexicon DefaultLexicon(std::uint64_t seed = 7) {
  return GenerateLexicon(LexiconConfig{}, Inv(), seed);
}

TEST(AccentTest, Patterns) {
  using P = Prosody;
  EXPECT_EQ(AccentPattern(3, 0), (ProsodySeq{P::kRise, P::kPad, P::kPad}));
  EXPECT_EQ(AccentPattern(3, 1), (ProsodySeq{P::kFall, P::kPad, P::kPad}));
  EXPECT_EQ(AccentPattern(4, 3), (ProsodySeq{P::kRise, P::kPad, P::kFall, P::kPad}));
  EXPECT_EQ(AccentPattern(2, 1), (ProsodySeq{P::kFall, P::kPad}));
}

TEST(LexiconTest, HomographCountsAndWeights) {
  const auto lex = DefaultLexicon();
  EXPECT_EQ(lex.entries().size(), 100u);
  EXPECT_EQ(lex.num_homographs(), 20u);
  EXPECT_DOUBLE_EQ(lex.homograph_rate(), 0.2);
  int prosody_only = 0;
  std::set<PhonemeSeq> phonemes;
  for (const auto &e : lex.entries()) {
    double sum = 0.0;
    for (const auto &r : e.readings) {
      EXPECT_GT(r.weight, 0.0);
      sum += r.weight;
      EXPECT_EQ(r.phonemes.size(), r.prosody.size());
      EXPECT_GE(r.phonemes.size(), 2u);
      EXPECT_LE(r.phonemes.size(), 4u);
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    if (e.IsHomograph()) {
      EXPECT_EQ(e.readings.size(), 2u);
      EXPECT_DOUBLE_EQ(e.readings[0].weight, 0.7);
      EXPECT_EQ(e.MajorityIndex(), 0u);
      EXPECT_NE(e.readings[0].prosody, e.readings[1].prosody);
      if (e.ProsodyOnly()) {
        ++prosody_only;
      } else {
        EXPECT_NE(e.readings[0].phonemes, e.readings[1].phonemes);
      }
    }
    for (const auto &r : e.readings) phonemes.insert(r.phonemes);
  }
  EXPECT_EQ(prosody_only, 10);
  // Distinct words never share a phoneme sequence.
  std::size_t n_distinct = 0;
  for (const auto &e : lex.entries()) n_distinct += e.ProsodyOnly() ? 1 : e.readings.size();
  EXPECT_EQ(phonemes.size(), n_distinct);
}

TEST(LexiconTest, DeterministicAndSeedSensitive) {
  EXPECT_EQ(DefaultLexicon(3), DefaultLexicon(3));
  EXPECT_FALSE(DefaultLexicon(3) == DefaultLexicon(4));
}

TEST(LexiconTest, InvalidRates) {
  LexiconConfig c;
  c.homograph_rate = 1.5;
  EXPECT_CODE(GenerateLexicon(c, Inv(), 1), ErrorCode::kInvalidRate);
  c = {};
  c.majority_share = 0.4;
  EXPECT_CODE(GenerateLexicon(c, Inv(), 1), ErrorCode::kInvalidRate);
}

TEST(LexiconTest, SaveLoad) {
  const auto dir = testing::ScratchDir("lexicon");
  const auto lex = DefaultLexicon();
  lex.Save(dir / "lexicon.tsv");
  EXPECT_EQ(Lexicon::Load(dir / "lexicon.tsv", Inv()), lex);
}

TEST(ArticulateTest, FrameCountIsDurationSum) {
  const SpeakerParams sp;
  const auto y = ParseLabelString("a [ shi * ka ] ze # mo ?", Inv());
  int expected = 0;
  for (const auto &it : y.items) expected += MoraDuration(it.mora, sp);
  const auto x = Articulate(y, sp, 1);
  EXPECT_EQ(x.n_frames, expected);
  EXPECT_EQ(x.dim, kFeatureDim);
  for (const auto &it : y.items) {
    const int d = MoraDuration(it.mora, sp);
    EXPECT_GE(d, sp.tempo_min);
    EXPECT_LE(d, sp.tempo_max);
  }
}

TEST(ArticulateTest, NoiselessIsDeterministic) {
  SpeakerParams sp;
  sp.noise_sigma = 0.0;
  const auto y = ParseLabelString("a [ shi * ka ]", Inv());
  EXPECT_EQ(Articulate(y, sp, 1).data, Articulate(y, sp, 2).data);
  sp.noise_sigma = 0.1;
  EXPECT_EQ(Articulate(y, sp, 1).data, Articulate(y, sp, 1).data);
  EXPECT_NE(Articulate(y, sp, 1).data, Articulate(y, sp, 2).data);
}

TEST(ArticulateTest, RiseChangesPitchFromItsBlockOnward) {
  SpeakerParams sp;
  sp.noise_sigma = 0.0;
  const auto with_rise = ParseLabelString("ka * shi [ ta * no *", Inv());
  const auto with_pad = ParseLabelString("ka * shi * ta * no *", Inv());
  const auto a = Articulate(with_rise, sp, 1), b = Articulate(with_pad, sp, 1);
  ASSERT_EQ(a.n_frames, b.n_frames);
  const int block2_start = MoraDuration("ka", sp);
  const int block2_last = block2_start + MoraDuration("shi", sp) - 1;
  for (int n = 0; n < a.n_frames; ++n) {
    for (int c = 0; c < kFeatureDim; ++c) {
      if (c == kPitchChannel) continue;
      ASSERT_EQ(a.at(n, c), b.at(n, c));
    }
    if (n < block2_last) {
      EXPECT_EQ(a.at(n, kPitchChannel), b.at(n, kPitchChannel)) << n;
    } else {
      EXPECT_NE(a.at(n, kPitchChannel), b.at(n, kPitchChannel)) << n;
    }
  }
}

TEST(ArticulateTest, DistinctProsodyStreamsAreDistinguishable) {
  SpeakerParams sp;
  sp.noise_sigma = 0.0;
  const std::vector<std::string> ph = {"ka", "shi", "ta"};
  std::set<std::vector<float>> seen;
  int n = 0;
  for (Prosody p0 : kAllProsody)
    for (Prosody p1 : kAllProsody)
      for (Prosody p2 : kAllProsody) {
        seen.insert(Articulate(JoinStreams(ph, {p0, p1, p2}), sp, 0).data);
        ++n;
      }
  EXPECT_EQ(seen.size(), static_cast<std::size_t>(n));
}

TEST(InvertTest, ExactAtNoiseZero) {
  SpeakerParams sp;
  sp.noise_sigma = 0.0;
  CorpusConfig cc;
  cc.pause_rate = 0.2;
  cc.question_rate = 0.3;
  cc.phrase_merge_rate = 0.3;
  const auto corpus = GenerateCorpus(DefaultLexicon(), 300, cc, sp, 5);
  for (const auto &u : corpus) ASSERT_EQ(InvertFeatures(u.features, sp, Inv()), u.labels) << u.id;
}

TEST(FitSpeakerTest, ExactRecoveryWithoutNoise) {
  SpeakerParams sp;
  sp.pitch_base = 1.3;
  sp.rise_delta = 0.6;
  sp.fall_delta = 0.9;
  sp.noise_sigma = 0.0;
  CorpusConfig cc;
  cc.question_rate = 0.2;
  cc.pause_rate = 0.1;
  const auto corpus = GenerateCorpus(DefaultLexicon(), 40, cc, sp, 6);
  const auto fit = FitSpeaker(corpus);
  EXPECT_NEAR(fit.pitch_base, 1.3, 1e-5);
  EXPECT_NEAR(fit.rise_delta, 0.6, 1e-5);
  EXPECT_NEAR(fit.fall_delta, 0.9, 1e-5);
  EXPECT_EQ(fit.tempo_min, sp.tempo_min);
  EXPECT_EQ(fit.tempo_max, sp.tempo_max);
  EXPECT_EQ(fit.noise_sigma, 0.0);
}

TEST(FitSpeakerTest, NoisyRecoveryWithinFivePercent) {
  SpeakerParams sp;
  sp.noise_sigma = 0.1;
  const auto corpus = GenerateCorpus(DefaultLexicon(), 200, CorpusConfig{}, sp, 8);
  const auto fit = FitSpeaker(corpus);
  EXPECT_NEAR(fit.pitch_base, sp.pitch_base, 0.05 * sp.pitch_base);
  EXPECT_NEAR(fit.rise_delta, sp.rise_delta, 0.05 * sp.rise_delta);
  EXPECT_NEAR(fit.fall_delta, sp.fall_delta, 0.05 * sp.fall_delta);
  EXPECT_NEAR(fit.noise_sigma, sp.noise_sigma, 0.05 * sp.noise_sigma);
  EXPECT_EQ(fit.tempo_min, sp.tempo_min);
  EXPECT_EQ(fit.tempo_max, sp.tempo_max);
}

TEST(FitSpeakerTest, TooFewPairs) {
  const auto corpus = GenerateCorpus(DefaultLexicon(), 3, CorpusConfig{}, SpeakerParams{}, 8);
  EXPECT_CODE(FitSpeaker(corpus), ErrorCode::kInsufficientData);
}

TEST(SpeakerTest, SaveLoad) {
  const auto dir = testing::ScratchDir("speaker");
  SpeakerParams sp;
  sp.rise_delta = 0.123456789;
  sp.tempo_max = 7;
  SaveSpeaker(dir / "speaker.cfg", sp);
  EXPECT_EQ(LoadSpeaker(dir / "speaker.cfg"), sp);
}

TEST(CorpusTest, EmptyAndRegenerable) {
  const auto lex = DefaultLexicon();
  EXPECT_TRUE(GenerateCorpus(lex, 0, CorpusConfig{}, SpeakerParams{}, 1).empty());
  const auto corpus = GenerateCorpus(lex, 30, CorpusConfig{}, SpeakerParams{}, 9);
  const auto parallel = GenerateCorpus(lex, 30, CorpusConfig{}, SpeakerParams{}, 9, 4);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto again = GenerateUtterance(lex, CorpusConfig{}, SpeakerParams{}, 9, i);
    EXPECT_EQ(again.labels, corpus[i].labels);
    EXPECT_EQ(again.features.data, corpus[i].features.data);
    EXPECT_EQ(parallel[i].features.data, corpus[i].features.data);
    EXPECT_EQ(corpus[i].id, "utt" + std::string(6 - std::to_string(i).size(), '0') + std::to_string(i));
  }
}

TEST(CorpusTest, LabelsFollowReadingsAndBoundaries) {
  const auto lex = DefaultLexicon();
  const auto corpus = GenerateCorpus(lex, 50, CorpusConfig{}, SpeakerParams{}, 10);
  for (const auto &u : corpus) {
    std::size_t pos = 0;
    for (std::size_t w = 0; w < u.graphemes.size(); ++w) {
      const auto &r = lex.Find(u.graphemes[w])->readings[static_cast<std::size_t>(u.readings[w])];
      for (std::size_t k = 0; k < r.phonemes.size(); ++k, ++pos) {
        ASSERT_EQ(u.labels.items[pos].mora, r.phonemes[k]);
        const bool boundary = k + 1 == r.phonemes.size() && w + 1 < u.graphemes.size();
        ASSERT_EQ(u.labels.items[pos].prosody, boundary ? Prosody::kPhraseBoundary : r.prosody[k]);
      }
    }
    EXPECT_EQ(pos, u.labels.size());
  }
}

TEST(CorpusTest, ReadingFrequenciesMatchPriors) {
  const auto lex = DefaultLexicon();
  CorpusConfig cc;
  cc.homograph_token_share = 1.0;  // every slot is a homograph
  std::size_t minority = 0, total = 0;
  for (std::size_t i = 0; total < 10000; ++i) {
    for (const auto &w : SampleWords(lex, cc, 11, i)) {
      minority += w.reading == 1 ? 1 : 0;
      ++total;
    }
  }
  EXPECT_NEAR(static_cast<double>(minority) / static_cast<double>(total), 0.3, 0.02);
}

TEST(TextPoolTest, DisjointFromExcluded) {
  const auto lex = DefaultLexicon();
  CorpusConfig cc;
  cc.words_max = 2;
  const auto corpus = GenerateCorpus(lex, 200, cc, SpeakerParams{}, 12);
  std::vector<std::vector<std::string>> used;
  for (const auto &u : corpus) used.push_back(u.graphemes);
  const auto pool = GenerateTextPool(lex, 500, cc, 13, used);
  EXPECT_EQ(pool.size(), 500u);
  std::set<std::string> seen;
  for (const auto &g : used) seen.insert(JoinWords(g));
  for (const auto &g : pool) EXPECT_EQ(seen.count(JoinWords(g)), 0u);
}

TEST(AsrTest, Rates) {
  const auto lex = DefaultLexicon();
  std::vector<std::string> words;
  for (int i = 0; i < 10000; ++i)
    words.push_back(lex.entries()[static_cast<std::size_t>(i % 100)].grapheme);
  EXPECT_EQ(AsrSurrogate(words, lex, 0.0, 1), words);
  const auto all = AsrSurrogate(words, lex, 1.0, 1);
  for (std::size_t i = 0; i < words.size(); ++i) {
    EXPECT_NE(all[i], words[i]);
    EXPECT_NE(lex.Find(all[i]), nullptr);
  }
  const auto some = AsrSurrogate(words, lex, 0.05, 2);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < words.size(); ++i) changed += some[i] != words[i] ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(changed) / 10000.0, 0.05, 0.02);
  EXPECT_CODE(AsrSurrogate(words, lex, -0.1, 1), ErrorCode::kInvalidRate);
}

}  // namespace
}  // namespace ttslabel
