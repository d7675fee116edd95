// src/augment.cc

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

#include "ttslabel/augment.h"

#include <cstdio>
#include <exception>
#include <set>
#include <thread>

#include "ttslabel/error.h"
#include "ttslabel/rng.h"

namespace ttslabel {

void AugmentConfig::Validate() const {
  if (n_labeled < 0 || n_text < 0)
    throw Error(ErrorCode::kInvalidConfig, "K and K' must be non-negative");
  if (real_repeat < 1) throw Error(ErrorCode::kInvalidConfig, "real_repeat must be >= 1");
}

std::vector<TtsLabelSequence> MakePseudoLabels(
    std::span<const std::vector<std::string>> graphemes, const Lexicon &lex,
    ResolutionPolicy policy) {
  std::vector<TtsLabelSequence> out;
  out.reserve(graphemes.size());
  for (const auto &g : graphemes) out.push_back(TextProcess(g, lex, policy).labels);
  return out;
}

std::vector<LabeledUtterance> SynthesizeAugmented(
    std::span<const TtsLabelSequence> labels, const SpeakerParams &sp, std::uint64_t seed,
    std::span<const std::vector<std::string>> graphemes, int jobs) {
  if (!graphemes.empty() && graphemes.size() != labels.size())
    throw Error(ErrorCode::kRaggedInputs, "graphemes and labels differ in length");
  std::vector<LabeledUtterance> out(labels.size());
  auto make = [&](std::size_t i) {
    auto &u = out[i];
    char id[32];
    std::snprintf(id, sizeof(id), "aug%06zu", i);
    u.id = id;
    if (!graphemes.empty()) {
      u.graphemes = graphemes[i];
      u.readings.assign(u.graphemes.size(), -1);
    }
    u.labels = labels[i];
    u.features = Articulate(labels[i], sp, DeriveSeed(seed, i));
    u.source = "augmented";
  };
  const std::size_t n_threads = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(jobs, 1)), std::max<std::size_t>(labels.size(), 1));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < labels.size(); ++i) make(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < labels.size(); i += n_threads) make(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto &th : pool) th.join();
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<LabeledUtterance> Merge(std::span<const LabeledUtterance> d,
                                    std::span<const LabeledUtterance> d_aug, bool dedupe) {
  int dim = -1;
  for (const auto *part : {&d, &d_aug}) {
    for (const auto &u : *part) {
      if (dim < 0) dim = u.features.dim;
      if (u.features.dim != dim)
        throw Error(ErrorCode::kDimMismatch, "feature dim " + std::to_string(u.features.dim) +
                                                 " of " + u.id + " != " + std::to_string(dim));
    }
  }
  std::vector<LabeledUtterance> out;
  out.reserve(d.size() + d_aug.size());
  std::set<std::string> seen;
  for (const auto *part : {&d, &d_aug}) {
    for (const auto &u : *part) {
      if (dedupe && !seen.insert(Serialize(u.labels)).second) continue;
      out.push_back(u);
    }
  }
  return out;
}

AugmentResult RunAugmentation(std::span<const LabeledUtterance> d,
                              std::span<const std::vector<std::string>> text,
                              const Lexicon &lex, const AugmentConfig &cfg,
                              std::uint64_t seed, int jobs) {
  cfg.Validate();
  AugmentResult res;
  res.speaker = FitSpeaker(d);
  SpeakerParams aux = res.speaker;
  if (cfg.aux_noise_sigma >= 0.0) aux.noise_sigma = cfg.aux_noise_sigma;
  const auto labels = MakePseudoLabels(text, lex, cfg.policy);
  res.augmented = SynthesizeAugmented(labels, aux, DeriveSeed(seed, 0xa06), text, jobs);
  return res;
}

}  // namespace ttslabel
