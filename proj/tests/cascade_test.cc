// tests/cascade_test.cc

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

#include <gtest/gtest.h>

#include "test_util.h"
#include "ttslabel/metrics.h"
#include "ttslabel/rng.h"

namespace ttslabel {
namespace {

const MoraInventory &Inv() {
  static const MoraInventory inv = MoraInventory::Default();
  return inv;
}

Lexicon HandLexicon() {
  std::vector<LexEntry> e;
  e.push_back({"cat", {{{"ka", "ta"}, {Prosody::kRise, Prosody::kPad}, 1.0}}});
  e.push_back({"hashi",
               {{{"ha", "shi"}, {Prosody::kFall, Prosody::kPad}, 0.7},
                {{"ha", "shi"}, {Prosody::kRise, Prosody::kPad}, 0.3}}});
  e.push_back({"kami",
               {{{"ka", "mi"}, {Prosody::kRise, Prosody::kPad}, 0.3},
                {{"ka", "me"}, {Prosody::kFall, Prosody::kPad}, 0.7}}});
  return Lexicon(MoraInventory({"ka", "ta", "ha", "shi", "mi", "me", "su", "so"}), e);
}

TEST(TextProcessTest, Lookup) {
  const auto lex = HandLexicon();
  const std::vector<std::string> one = {"cat"};
  EXPECT_EQ(Serialize(TextProcess(one, lex).labels), "ka [ ta *");
  const std::vector<std::string> two = {"cat", "hashi"};
  EXPECT_EQ(Serialize(TextProcess(two, lex).labels), "ka [ ta # ha ] shi *");
  // Majority prior versus first listed reading.
  const std::vector<std::string> k = {"kami"};
  EXPECT_EQ(Serialize(TextProcess(k, lex, ResolutionPolicy::kMajorityPrior).labels), "ka ] me *");
  EXPECT_EQ(Serialize(TextProcess(k, lex, ResolutionPolicy::kFirstEntry).labels), "ka [ mi *");
}

TEST(TextProcessTest, FallbackSpellsUnknownWords) {
  const auto lex = HandLexicon();
  const std::vector<std::string> g = {"sushi", "cat"};
  const auto r = TextProcess(g, lex);
  EXPECT_EQ(r.n_fallback, 1);
  EXPECT_EQ(Serialize(r.labels), "su * shi # ka [ ta *");
  EXPECT_CODE(TextProcess(std::vector<std::string>{}, lex), ErrorCode::kEmptySequence);
}

TEST(CascadeTest, GroundTruthOnUnambiguousLexiconIsExact) {
  LexiconConfig lc;
  lc.homograph_rate = 0.0;
  const auto lex = GenerateLexicon(lc, Inv(), 2);
  const auto corpus = GenerateCorpus(lex, 100, CorpusConfig{}, SpeakerParams{}, 3);
  std::vector<TtsLabelSequence> refs, hyps;
  for (const auto &u : corpus) {
    refs.push_back(u.labels);
    hyps.push_back(CascadeAnnotate(u.graphemes, lex, ResolutionPolicy::kMajorityPrior, 0.0, 1).labels);
  }
  const auto rep = EvaluationProtocol(refs, {{"gt", hyps}}, DefaultExcludedLabels());
  EXPECT_DOUBLE_EQ(rep.models[0].cer, 0.0);
  EXPECT_DOUBLE_EQ(rep.models[0].prosody.f1, 1.0);
}

TEST(CascadeTest, IgnoresAcousticRealization) {
  // Two utterances of a prosody-only homograph in different readings get the
  // same text-derived labels.
  const auto lex = HandLexicon();
  const std::vector<std::string> g = {"hashi"};
  SpeakerParams sp;
  const auto x0 = Articulate(JoinStreams({"ha", "shi"}, {Prosody::kFall, Prosody::kPad}), sp, 1);
  const auto x1 = Articulate(JoinStreams({"ha", "shi"}, {Prosody::kRise, Prosody::kPad}), sp, 1);
  EXPECT_NE(x0.data, x1.data);
  EXPECT_EQ(TextProcess(g, lex).labels, TextProcess(g, lex).labels);
}

TEST(CascadeTest, HomographAccuracyApproachesMajorityShare) {
  const auto lex = GenerateLexicon(LexiconConfig{}, Inv(), 4);
  CorpusConfig cc;
  cc.homograph_token_share = 1.0;
  std::size_t correct = 0, total = 0;
  for (std::size_t i = 0; total < 10000; ++i) {
    for (const auto &w : SampleWords(lex, cc, 5, i)) {
      const auto &e = lex.entries()[static_cast<std::size_t>(w.entry)];
      const std::vector<std::string> g = {e.grapheme};
      const auto out = TextProcess(g, lex).labels;
      correct += SplitStreams(out).second == e.readings[static_cast<std::size_t>(w.reading)].prosody;
      ++total;
    }
  }
  EXPECT_NEAR(static_cast<double>(correct) / static_cast<double>(total), 0.7, 0.02);
}

TEST(CascadeTest, ErrorRateOrderingAndRandomWordBaseline) {
  const auto lex = GenerateLexicon(LexiconConfig{}, Inv(), 6);
  const auto corpus = GenerateCorpus(lex, 400, CorpusConfig{}, SpeakerParams{}, 7);
  auto corpus_cer = [&](double err, std::uint64_t seed) {
    std::vector<TtsLabelSequence> refs, hyps;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      refs.push_back(corpus[i].labels);
      hyps.push_back(CascadeAnnotate(corpus[i].graphemes, lex, ResolutionPolicy::kMajorityPrior,
                                     err, DeriveSeed(seed, i))
                         .labels);
    }
    return EvaluationProtocol(refs, {{"c", hyps}}, {}).models[0].cer;
  };
  const double gt = corpus_cer(0.0, 1), asr = corpus_cer(0.05, 1);
  EXPECT_LE(gt, asr);

  // Random-word baseline by independent simulation: replace every word by a
  // different word drawn uniformly and read it with the majority reading.
  Rng rng(8);
  std::size_t edits = 0, moras = 0;
  for (const auto &u : corpus) {
    PhonemeSeq hyp;
    for (const auto &g : u.graphemes) {
      int k = rng.UniformInt(0, 98);
      if (k >= lex.IndexOf(g)) ++k;
      const auto &e = lex.entries()[static_cast<std::size_t>(k)];
      const auto &r = e.readings[e.MajorityIndex()].phonemes;
      hyp.insert(hyp.end(), r.begin(), r.end());
    }
    const auto ref = StripProsody(u.labels);
    edits += Levenshtein(ref, hyp);
    moras += ref.size();
  }
  const double baseline = static_cast<double>(edits) / static_cast<double>(moras);
  EXPECT_NEAR(corpus_cer(1.0, 2), baseline, 0.05);
}

}  // namespace
}  // namespace ttslabel
