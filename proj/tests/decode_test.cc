// tests/decode_test.cc

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

#include "ttslabel/decode.h"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "test_util.h"

namespace ttslabel {
namespace {

ModelConfig TinyConfig() {
  ModelConfig c;
  c.d_model = 8;
  c.n_heads = 2;
  c.n_enc_layers = 1;
  c.n_dec_layers = 1;
  c.ff_dim = 16;
  return c;
}

// Decoder layers are zero so the last token's embedding alone drives the
// output; each of <s>, "a" and "[" maps onto one output row.
AnnotatorModel<float> ForcedModel() {
  const auto v = Vocabulary::Build(MoraInventory::Default());
  AnnotatorModel<float> m(TinyConfig(), v);
  auto &p = m.params();
  const auto &lay = m.layout();
  const int d = 8;
  auto emb = [&](int tok, int pos, int neg) {
    p[lay.embedding + static_cast<std::size_t>(tok * d + pos)] = 100.0f;
    p[lay.embedding + static_cast<std::size_t>(tok * d + neg)] = -100.0f;
  };
  for (int i = 0; i < d; ++i) p[lay.decoder_norm.gain + static_cast<std::size_t>(i)] = 1.0f;
  const int a = *v.Id("a"), rise = v.ProsodyId(Prosody::kRise);
  emb(v.bos(), 0, 1);
  emb(a, 2, 3);
  emb(rise, 4, 5);
  auto out = [&](int row, int tok) {
    p[lay.output.w + static_cast<std::size_t>(row * v.size() + tok)] = 5.0f;
  };
  out(0, a);
  out(2, rise);
  out(4, v.eos());
  return m;
}

TEST(DecodeTest, ForcedLogitsGiveExpectedLabels) {
  const auto m = ForcedModel();
  Rng rng(1);
  const auto x = oracle::RandomFeatures(&rng, 4, 12);
  const auto g = GreedySearch(m, x, 0);
  const auto &v = m.vocab();
  EXPECT_EQ(g.ids, (std::vector<int>{v.bos(), *v.Id("a"), v.ProsodyId(Prosody::kRise), v.eos()}));
  EXPECT_TRUE(g.finished);
  const auto ann = Annotate(m, x);
  EXPECT_EQ(Serialize(ann.labels), "a [");
  EXPECT_FALSE(ann.repaired);
  DecodeOptions beam;
  beam.mode = SearchMode::kBeam;
  beam.beam = 3;
  EXPECT_EQ(Serialize(Annotate(m, x, beam).labels), "a [");
}

AnnotatorModel<double> ToyModel(std::uint64_t seed) {
  const auto v = Vocabulary::Build(std::vector<std::string>{"ka", "ta"});
  auto m = AnnotatorModel<double>::Init(TinyConfig(), v, seed);
  // Sharpen the output layer so distributions are far from uniform.
  const auto &o = m.layout().output;
  for (std::size_t i = 0; i < static_cast<std::size_t>(o.in * o.out); ++i) m.params()[o.w + i] *= 4.0;
  return m;
}

TEST(DecodeTest, BeamOneEqualsGreedy) {
  Rng rng(2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto m = ToyModel(s);
    const auto x = oracle::RandomFeatures(&rng, 5, 12);
    const auto g = GreedySearch(m, x, 6);
    const auto b = BeamSearch(m, x, 1, 6);
    EXPECT_EQ(g.ids, b.ids);
    EXPECT_DOUBLE_EQ(g.score, b.score);
  }
}

TEST(DecodeTest, FullWidthBeamFindsExhaustiveOptimum) {
  Rng rng(3);
  const int max_len = 4;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto m = ToyModel(100 + s);
    const auto x = oracle::RandomFeatures(&rng, 5, 12);
    const auto best = oracle::ExhaustiveBest(m, x, max_len);
    const int width = static_cast<int>(std::pow(m.vocab().size(), max_len));
    const auto b = BeamSearch(m, x, width, max_len);
    EXPECT_NEAR(b.score, best.score, 1e-9);
    EXPECT_EQ(b.ids, best.ids);
    EXPECT_GE(b.score, GreedySearch(m, x, max_len).score - 1e-12);
  }
}

// Widening the beam can lose: a narrower beam may keep a prefix that a wider
// one prunes in favour of a locally better but globally worse one. The
// full-width beam still bounds every narrower one.
TEST(DecodeTest, BeamScoreVersusWidth) {
  ModelConfig c = TinyConfig();
  const auto v = Vocabulary::Build(std::vector<std::string>{"ka", "ta"});
  Rng rng(1);
  AcousticFeatures x;
  AnnotatorModel<double> m;
  for (std::uint64_t s = 0; s <= 240; ++s) {
    x = AcousticFeatures(5, 12);
    for (auto &f : x.data) f = static_cast<float>(rng.Normal());
    if (s % 20 != 0 && s != 240) continue;
    m = AnnotatorModel<double>::Init(c, v, s);
    const auto &o = m.layout().output;
    const double sharp = 1.0 + static_cast<double>(s % 4) * 2.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(o.in * o.out); ++i) m.params()[o.w + i] *= sharp;
    const double full = BeamSearch(m, x, 14641, 4).score;
    for (int k = 1; k <= 8; ++k) EXPECT_GE(full, BeamSearch(m, x, k, 4).score - 1e-12);
  }
  // Seed 240: beam 3 ends below greedy.
  EXPECT_LT(BeamSearch(m, x, 3, 4).score, GreedySearch(m, x, 4).score - 0.1);
}

TEST(DecodeTest, ScoresMatchTeacherForcing) {
  const auto m = ToyModel(9);
  Rng rng(4);
  const auto x = oracle::RandomFeatures(&rng, 5, 12);
  const auto b = BeamSearch(m, x, 4, 6);
  EXPECT_NEAR(-b.score, oracle::IncrementalNll(m, x, b.ids), 1e-9);
}

TEST(DecodeTest, Deterministic) {
  const auto m = ToyModel(5);
  Rng rng(5);
  const auto x = oracle::RandomFeatures(&rng, 5, 12);
  EXPECT_EQ(BeamSearch(m, x, 3, 8).ids, BeamSearch(m, x, 3, 8).ids);
  EXPECT_CODE(BeamSearch(m, x, 0, 8), ErrorCode::kInvalidConfig);
}

TEST(RepairTest, Rules) {
  const auto v = Vocabulary::Build(MoraInventory::Default());
  const int a = *v.Id("a"), ka = *v.Id("ka");
  const int rise = v.ProsodyId(Prosody::kRise), fall = v.ProsodyId(Prosody::kFall);
  const int bos = v.bos(), eos = v.eos();

  auto r = RepairTokens(std::vector<int>{bos, a, rise, eos}, v);
  EXPECT_EQ(Serialize(r.labels), "a [");
  EXPECT_FALSE(r.repaired);

  r = RepairTokens(std::vector<int>{bos, a, ka, fall, eos}, v);  // consecutive moras
  EXPECT_EQ(Serialize(r.labels), "a * ka ]");
  EXPECT_TRUE(r.repaired);

  r = RepairTokens(std::vector<int>{bos, a, rise, ka, eos}, v);  // trailing unpaired mora
  EXPECT_EQ(Serialize(r.labels), "a [");
  EXPECT_TRUE(r.repaired);

  r = RepairTokens(std::vector<int>{bos, rise, a, rise, fall, eos}, v);  // stray prosody
  EXPECT_EQ(Serialize(r.labels), "a [");
  EXPECT_TRUE(r.repaired);

  r = RepairTokens(std::vector<int>{bos, a, rise}, v);  // no </s>
  EXPECT_EQ(Serialize(r.labels), "a [");
  EXPECT_TRUE(r.repaired);

  r = RepairTokens(std::vector<int>{bos, eos}, v);
  EXPECT_TRUE(r.labels.empty());
  EXPECT_TRUE(r.repaired);

  // Whatever the ids, the result always satisfies the grammar.
  Rng rng(6);
  for (int t = 0; t < 500; ++t) {
    std::vector<int> ids{bos};
    for (int i = rng.UniformInt(0, 10); i > 0; --i) ids.push_back(rng.UniformInt(0, v.size() - 1));
    const auto out = RepairTokens(ids, v).labels;
    if (!out.empty()) {
      ASSERT_EQ(ParseLabelString(Serialize(out), MoraInventory::Default()), out);
    }
  }
}

}  // namespace
}  // namespace ttslabel
