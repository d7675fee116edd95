// tests/vocab_test.cc

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

#include "ttslabel/vocab.h"

#include <gtest/gtest.h>

#include "test_util.h"
#include "ttslabel/rng.h"

namespace ttslabel {
namespace {

TEST(VocabTest, SizeAndIds) {
  const auto v = Vocabulary::Build(MoraInventory::Default());
  EXPECT_EQ(v.size(), 39);
  EXPECT_EQ(*v.Id("a"), 0);
  EXPECT_EQ(v.ProsodyId(Prosody::kRise), 30);
  EXPECT_EQ(v.bos(), 36);
  EXPECT_EQ(v.eos(), 37);
  EXPECT_EQ(v.pad(), 38);
  for (int id = 0; id < v.size(); ++id) EXPECT_EQ(*v.Id(v.Token(id)), id);
}

TEST(VocabTest, Deterministic) {
  EXPECT_EQ(Vocabulary::Build(MoraInventory::Default()),
            Vocabulary::Build(MoraInventory::Default()));
  // Id assignment ignores inventory order.
  EXPECT_EQ(Vocabulary::Build(std::vector<std::string>{"ka", "a"}),
            Vocabulary::Build(std::vector<std::string>{"a", "ka"}));
}

TEST(VocabTest, BuildErrors) {
  EXPECT_CODE(Vocabulary::Build(std::vector<std::string>{"a", "["}), ErrorCode::kDuplicateToken);
  EXPECT_CODE(Vocabulary::Build(std::vector<std::string>{"a", "<s>"}), ErrorCode::kDuplicateToken);
  EXPECT_CODE(Vocabulary::Build(std::vector<std::string>{}), ErrorCode::kInvalidConfig);
}

TEST(VocabTest, EncodeDecode) {
  const auto inv = MoraInventory::Default();
  const auto v = Vocabulary::Build(inv);
  const auto seq = ParseLabelString("a [", inv);
  EXPECT_EQ(v.Encode(seq), (std::vector<int>{36, 0, 30, 37}));
  EXPECT_EQ(v.Decode(std::vector<int>{36, 0, 30, 37}), seq);
  EXPECT_CODE(v.Encode(TtsLabelSequence{}), ErrorCode::kEmptySequence);
  EXPECT_CODE(v.Encode({{{"zz", Prosody::kPad}}}), ErrorCode::kUnknownToken);
  // Trailing ids after </s> are ignored.
  EXPECT_EQ(v.Decode(std::vector<int>{36, 0, 30, 37, 5, 5, 99}), seq);
}

TEST(VocabTest, DecodeErrors) {
  const auto v = Vocabulary::Build(MoraInventory::Default());
  EXPECT_CODE(v.Decode(std::vector<int>{36, 0, 0, 37}), ErrorCode::kGrammarViolation);
  EXPECT_CODE(v.Decode(std::vector<int>{36, 0, 30}), ErrorCode::kMissingEos);
  EXPECT_CODE(v.Decode(std::vector<int>{36, 0, 300, 37}), ErrorCode::kUnknownId);
  EXPECT_CODE(v.Decode(std::vector<int>{36, 37}), ErrorCode::kGrammarViolation);
  EXPECT_CODE(v.Decode(std::vector<int>{36, 0, 37}), ErrorCode::kGrammarViolation);
  EXPECT_CODE(v.Decode(std::vector<int>{36, 0, 36, 37}), ErrorCode::kGrammarViolation);
}

TEST(VocabTest, ArbitraryIdListsOnlyThrowTypedErrors) {
  const auto v = Vocabulary::Build(MoraInventory::Default());
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<int> ids{v.bos()};
    const int n = rng.UniformInt(0, 8);
    for (int i = 0; i < n; ++i) ids.push_back(rng.UniformInt(-2, v.size() + 2));
    try {
      const auto seq = v.Decode(ids);
      EXPECT_FALSE(seq.empty());
    } catch (const Error &) {
    }
  }
}

TEST(VocabTest, RoundTripRandom) {
  const auto inv = MoraInventory::Default();
  const auto v = Vocabulary::Build(inv);
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    TtsLabelSequence seq;
    const int m = rng.UniformInt(1, 12);
    for (int i = 0; i < m; ++i)
      seq.items.push_back({inv.tokens()[static_cast<std::size_t>(rng.UniformInt(0, 29))],
                           kAllProsody[static_cast<std::size_t>(rng.UniformInt(0, 5))]});
    const auto ids = v.Encode(seq);
    ASSERT_EQ(ids.size(), 2 * seq.size() + 2);
    ASSERT_EQ(v.Decode(ids), seq);
  }
}

TEST(VocabTest, SaveLoad) {
  const auto dir = testing::ScratchDir("vocab");
  const auto v = Vocabulary::Build(MoraInventory::Default());
  v.Save(dir / "vocab.tsv");
  EXPECT_EQ(Vocabulary::Load(dir / "vocab.tsv"), v);
}

}  // namespace
}  // namespace ttslabel
