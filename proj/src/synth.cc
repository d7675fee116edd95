// src/synth.cc

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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "ttslabel/config.h"
#include "ttslabel/error.h"
#include "ttslabel/rng.h"

namespace ttslabel {

bool LexEntry::ProsodyOnly() const {
  if (readings.size() < 2) return false;
  for (const auto &r : readings) {
    if (r.phonemes != readings[0].phonemes) return false;
  }
  return true;
}

std::size_t LexEntry::MajorityIndex() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < readings.size(); ++i) {
    if (readings[i].weight > readings[best].weight) best = i;
  }
  return best;
}

Lexicon::Lexicon(MoraInventory inventory, std::vector<LexEntry> entries)
    : inventory_(std::move(inventory)), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].readings.empty())
      throw Error(ErrorCode::kFormat, "entry '" + entries_[i].grapheme + "' has no reading");
    if (!index_.emplace(entries_[i].grapheme, static_cast<int>(i)).second)
      throw Error(ErrorCode::kDuplicateToken, "duplicate grapheme " + entries_[i].grapheme);
  }
}

const LexEntry *Lexicon::Find(std::string_view grapheme) const {
  const int i = IndexOf(grapheme);
  return i < 0 ? nullptr : &entries_[static_cast<std::size_t>(i)];
}

int Lexicon::IndexOf(std::string_view grapheme) const {
  auto it = index_.find(std::string(grapheme));
  return it == index_.end() ? -1 : it->second;
}

std::size_t Lexicon::num_homographs() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [](const LexEntry &e) { return e.IsHomograph(); }));
}

double Lexicon::homograph_rate() const {
  if (entries_.empty()) return 0.0;
  return static_cast<double>(num_homographs()) / static_cast<double>(entries_.size());
}

void Lexicon::Save(const std::filesystem::path &path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  for (const auto &e : entries_) {
    for (const auto &r : e.readings)
      out << e.grapheme << '\t' << FormatDouble(r.weight) << '\t'
          << Serialize(JoinStreams(r.phonemes, r.prosody)) << '\n';
  }
}

Lexicon Lexicon::Load(const std::filesystem::path &path, const MoraInventory &inventory) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<LexEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw Error(ErrorCode::kFormat, "lexicon line needs three fields: " + line);
    const std::string g = line.substr(0, t1);
    Reading r;
    r.weight = std::stod(line.substr(t1 + 1, t2 - t1 - 1));
    auto streams = SplitStreams(ParseLabelString(line.substr(t2 + 1), inventory));
    r.phonemes = std::move(streams.first);
    r.prosody = std::move(streams.second);
    if (entries.empty() || entries.back().grapheme != g) entries.push_back({g, {}});
    entries.back().readings.push_back(std::move(r));
  }
  return Lexicon(inventory, std::move(entries));
}

ProsodySeq AccentPattern(int n, int type) {
  ProsodySeq p(static_cast<std::size_t>(n), Prosody::kPad);
  if (n < 2 || type < 0 || type > n - 1) return p;
  if (type == 1) {
    p[0] = Prosody::kFall;
  } else {
    p[0] = Prosody::kRise;
    if (type >= 2) p[static_cast<std::size_t>(type - 1)] = Prosody::kFall;
  }
  return p;
}

Lexicon GenerateLexicon(const LexiconConfig &cfg, const MoraInventory &inventory,
                        std::uint64_t seed) {
  if (!(cfg.homograph_rate >= 0.0 && cfg.homograph_rate <= 1.0))
    throw Error(ErrorCode::kInvalidRate, "homograph_rate must be in [0, 1]");
  if (!(cfg.majority_share >= 0.5 && cfg.majority_share <= 1.0))
    throw Error(ErrorCode::kInvalidRate, "majority_share must be in [0.5, 1]");
  if (!(cfg.prosody_only_fraction >= 0.0 && cfg.prosody_only_fraction <= 1.0))
    throw Error(ErrorCode::kInvalidRate, "prosody_only_fraction must be in [0, 1]");
  if (cfg.n_words < 1) throw Error(ErrorCode::kInvalidConfig, "n_words must be positive");
  if (cfg.min_moras < 2 || cfg.max_moras < cfg.min_moras)
    throw Error(ErrorCode::kInvalidConfig, "need 2 <= min_moras <= max_moras");
  if (inventory.size() < 2) throw Error(ErrorCode::kInvalidConfig, "inventory too small");

  Rng rng(DeriveSeed(seed, 0x1e8));
  const int n = cfg.n_words;
  const int n_homographs = static_cast<int>(std::llround(n * cfg.homograph_rate));
  const int n_prosody_only =
      static_cast<int>(std::llround(n_homographs * cfg.prosody_only_fraction));

  // kind: 0 plain, 1 prosody-only homograph, 2 homograph differing in both.
  std::vector<int> kind(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n_homographs; ++i) kind[static_cast<std::size_t>(i)] = i < n_prosody_only ? 1 : 2;
  for (std::size_t i = kind.size(); i > 1; --i) std::swap(kind[i - 1], kind[rng.NextU64() % i]);

  const auto &moras = inventory.tokens();
  std::set<PhonemeSeq> used;
  auto fresh_phonemes = [&](int len) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      PhonemeSeq ph;
      for (int k = 0; k < len; ++k)
        ph.push_back(moras[static_cast<std::size_t>(
            rng.UniformInt(0, static_cast<int>(moras.size()) - 1))]);
      if (used.insert(ph).second) return ph;
    }
    throw Error(ErrorCode::kInvalidConfig, "cannot draw distinct phoneme sequences");
  };

  int width = 3;
  for (int m = n - 1; m >= 1000; m /= 10) ++width;
  std::vector<LexEntry> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    LexEntry e;
    e.grapheme = "w" + std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))), '0') + digits;
    const int len = rng.UniformInt(cfg.min_moras, cfg.max_moras);
    const int type = rng.UniformInt(0, len - 1);
    Reading major{fresh_phonemes(len), AccentPattern(len, type), 1.0};
    const int k = kind[static_cast<std::size_t>(i)];
    if (k == 0) {
      e.readings.push_back(std::move(major));
    } else {
      int other = rng.UniformInt(0, len - 2);
      if (other >= type) ++other;
      Reading minor{major.phonemes, AccentPattern(len, other), 1.0 - cfg.majority_share};
      if (k == 2) {
        for (int attempt = 0;; ++attempt) {
          PhonemeSeq ph = major.phonemes;
          const auto pos = static_cast<std::size_t>(rng.UniformInt(0, len - 1));
          ph[pos] = moras[static_cast<std::size_t>(
              rng.UniformInt(0, static_cast<int>(moras.size()) - 1))];
          if (used.insert(ph).second) {
            minor.phonemes = std::move(ph);
            break;
          }
          if (attempt > 10000)
            throw Error(ErrorCode::kInvalidConfig, "cannot draw a homograph variant");
        }
      }
      major.weight = cfg.majority_share;
      e.readings.push_back(std::move(major));
      e.readings.push_back(std::move(minor));
    }
    entries.push_back(std::move(e));
  }
  return Lexicon(inventory, std::move(entries));
}

void SpeakerParams::Validate() const {
  if (tempo_min < 2 || tempo_max < tempo_min)
    throw Error(ErrorCode::kInvalidConfig, "need 2 <= tempo_min <= tempo_max");
  if (!(noise_sigma >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "noise_sigma < 0");
  if (!(rise_delta > 0.0 && fall_delta > 0.0))
    throw Error(ErrorCode::kInvalidConfig, "pitch deltas must be positive");
}

void SaveSpeaker(const std::filesystem::path &path, const SpeakerParams &sp) {
  KeyValueConfig kv;
  kv.Set("pitch_base", FormatDouble(sp.pitch_base));
  kv.Set("rise_delta", FormatDouble(sp.rise_delta));
  kv.Set("fall_delta", FormatDouble(sp.fall_delta));
  kv.Set("tempo_min", std::to_string(sp.tempo_min));
  kv.Set("tempo_max", std::to_string(sp.tempo_max));
  kv.Set("noise_sigma", FormatDouble(sp.noise_sigma));
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << kv.ToString();
}

SpeakerParams LoadSpeaker(const std::filesystem::path &path) {
  const auto kv = KeyValueConfig::Load(path);
  kv.CheckKnown({"pitch_base", "rise_delta", "fall_delta", "tempo_min", "tempo_max",
                 "noise_sigma"});
  SpeakerParams sp;
  sp.pitch_base = kv.GetDouble("pitch_base", sp.pitch_base);
  sp.rise_delta = kv.GetDouble("rise_delta", sp.rise_delta);
  sp.fall_delta = kv.GetDouble("fall_delta", sp.fall_delta);
  sp.tempo_min = kv.GetInt("tempo_min", sp.tempo_min);
  sp.tempo_max = kv.GetInt("tempo_max", sp.tempo_max);
  sp.noise_sigma = kv.GetDouble("noise_sigma", sp.noise_sigma);
  sp.Validate();
  return sp;
}

std::vector<float> MoraEmbedding(std::string_view mora) {
  Rng rng(MixSeed(HashString(mora)));
  std::vector<float> e(kEmbedDims);
  for (auto &v : e) v = static_cast<float>(rng.Uniform(-1.0, 1.0));
  return e;
}

int MoraDuration(std::string_view mora, const SpeakerParams &sp) {
  const auto range = static_cast<std::uint64_t>(sp.tempo_max - sp.tempo_min + 1);
  return sp.tempo_min + static_cast<int>((HashString(mora) >> 7) % range);
}

AcousticFeatures Articulate(const TtsLabelSequence &y, const SpeakerParams &sp,
                            std::uint64_t seed) {
  sp.Validate();
  if (y.empty()) throw Error(ErrorCode::kEmptySequence, "nothing to articulate");
  int total = 0;
  for (const auto &item : y.items) total += MoraDuration(item.mora, sp);
  AcousticFeatures x(total, kFeatureDim);
  double level = sp.pitch_base;
  int frame = 0;
  for (const auto &item : y.items) {
    const int d = MoraDuration(item.mora, sp);
    const auto emb = MoraEmbedding(item.mora);
    for (int j = 0; j < d; ++j) {
      for (int c = 0; c < kEmbedDims; ++c) x.at(frame + j, c) = emb[static_cast<std::size_t>(c)];
      x.at(frame + j, kPitchChannel) = static_cast<float>(level);
      x.at(frame + j, kEnergyChannel) = 1.0f;
      x.at(frame + j, kOnsetChannel) = j == 0 ? 1.0f : 0.0f;
    }
    const int last = frame + d - 1;
    switch (item.prosody) {
      case Prosody::kRise:
        level += sp.rise_delta;
        x.at(last, kPitchChannel) = static_cast<float>(level);
        break;
      case Prosody::kFall:
        level -= sp.fall_delta;
        x.at(last, kPitchChannel) = static_cast<float>(level);
        break;
      case Prosody::kPhraseBoundary:
        level = sp.pitch_base;
        x.at(last, kPitchChannel) = static_cast<float>(level);
        x.at(last, kEnergyChannel) = 0.5f;
        break;
      case Prosody::kPause:
        for (int j = 0; j < d; ++j) x.at(frame + j, kEnergyChannel) = 0.0f;
        level = sp.pitch_base;
        break;
      case Prosody::kQuestion:
        for (int j = 0; j < d; ++j)
          x.at(frame + j, kPitchChannel) =
              static_cast<float>(level + sp.rise_delta * (j + 1) / d);
        level = sp.pitch_base;
        break;
      case Prosody::kPad:
        break;
    }
    frame += d;
  }
  if (sp.noise_sigma > 0.0) {
    Rng rng(DeriveSeed(seed, 0x4015e));
    for (auto &v : x.data) v += static_cast<float>(sp.noise_sigma * rng.Normal());
  }
  return x;
}

namespace {

// [start, end) frame ranges, one per mora, from the onset channel.
std::vector<std::pair<int, int>> SegmentMoras(const AcousticFeatures &x) {
  std::vector<std::pair<int, int>> segs;
  for (int n = 0; n < x.n_frames; ++n) {
    if (x.at(n, kOnsetChannel) > 0.5f || segs.empty()) {
      if (!segs.empty()) segs.back().second = n;
      segs.push_back({n, x.n_frames});
    }
  }
  return segs;
}

}  // namespace

TtsLabelSequence InvertFeatures(const AcousticFeatures &x, const SpeakerParams &sp,
                                const MoraInventory &inventory) {
  if (x.dim != kFeatureDim)
    throw Error(ErrorCode::kDimMismatch, "expected " + std::to_string(kFeatureDim) + " channels");
  std::vector<std::vector<float>> embeddings;
  for (const auto &t : inventory.tokens()) embeddings.push_back(MoraEmbedding(t));

  TtsLabelSequence out;
  double level = sp.pitch_base;
  for (const auto &[start, end] : SegmentMoras(x)) {
    const int d = end - start;
    // Mora identity: nearest embedding to the segment mean.
    std::vector<double> mean(kEmbedDims, 0.0);
    for (int n = start; n < end; ++n)
      for (int c = 0; c < kEmbedDims; ++c) mean[static_cast<std::size_t>(c)] += x.at(n, c);
    std::size_t best = 0;
    double best_dist = 1e300;
    for (std::size_t m = 0; m < embeddings.size(); ++m) {
      double dist = 0.0;
      for (int c = 0; c < kEmbedDims; ++c) {
        const double diff = mean[static_cast<std::size_t>(c)] / d - embeddings[m][static_cast<std::size_t>(c)];
        dist += diff * diff;
      }
      if (dist < best_dist) {
        best_dist = dist;
        best = m;
      }
    }
    double energy = 0.0;
    for (int n = start; n < end; ++n) energy += x.at(n, kEnergyChannel);
    energy /= d;
    const double first = x.at(start, kPitchChannel);
    const double before_last = x.at(end - 2 >= start ? end - 2 : start, kPitchChannel);
    const double last = x.at(end - 1, kPitchChannel);
    Prosody p = Prosody::kPad;
    if (energy < 0.25) {
      p = Prosody::kPause;
      level = sp.pitch_base;
    } else if (x.at(end - 1, kEnergyChannel) < 0.75f) {
      p = Prosody::kPhraseBoundary;
      level = sp.pitch_base;
    } else if (d >= 2 && before_last - level > sp.rise_delta / 4) {
      p = Prosody::kQuestion;
      level = sp.pitch_base;
    } else if (last - first > sp.rise_delta / 2) {
      p = Prosody::kRise;
      level += sp.rise_delta;
    } else if (first - last > sp.fall_delta / 2) {
      p = Prosody::kFall;
      level -= sp.fall_delta;
    }
    out.items.push_back({inventory.tokens()[best], p});
  }
  return out;
}

SpeakerParams FitSpeaker(std::span<const LabeledUtterance> data) {
  if (data.size() < 10)
    throw Error(ErrorCode::kInsufficientData,
                "need at least 10 labeled pairs, got " + std::to_string(data.size()));
  // pitch = base + rise * a - fall * b, with (a, b) counted since the last reset
  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  auto add = [&](double a, double b, double pitch) {
    const Eigen::Vector3d row(1.0, a, -b);
    normal += row * row.transpose();
    rhs += row * pitch;
  };
  int tempo_min = 1 << 30, tempo_max = 0;
  double noise_sq = 0.0;
  std::size_t noise_n = 0, used = 0;
  for (const auto &utt : data) {
    const auto &x = utt.features;
    if (x.dim != kFeatureDim) throw Error(ErrorCode::kDimMismatch, "bad feature dim in " + utt.id);
    for (int n = 0; n < x.n_frames; ++n) {
      noise_sq += static_cast<double>(x.at(n, kNoiseChannel)) * x.at(n, kNoiseChannel);
      ++noise_n;
    }
    const auto segs = SegmentMoras(x);
    if (segs.size() != utt.labels.size()) continue;
    ++used;
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto [start, end] = segs[i];
      const int d = end - start;
      tempo_min = std::min(tempo_min, d);
      tempo_max = std::max(tempo_max, d);
      const Prosody p = utt.labels.items[i].prosody;
      for (int n = start; n < end; ++n) {
        const double pitch = x.at(n, kPitchChannel);
        const bool last = n == end - 1;
        if (p == Prosody::kQuestion) {
          add(a + static_cast<double>(n - start + 1) / d, b, pitch);
        } else if (last && p == Prosody::kRise) {
          add(a + 1, b, pitch);
        } else if (last && p == Prosody::kFall) {
          add(a, b + 1, pitch);
        } else if (last && p == Prosody::kPhraseBoundary) {
          add(0, 0, pitch);
        } else {
          add(a, b, pitch);
        }
      }
      switch (p) {
        case Prosody::kRise: a += 1; break;
        case Prosody::kFall: b += 1; break;
        case Prosody::kPhraseBoundary:
        case Prosody::kPause:
        case Prosody::kQuestion: a = b = 0; break;
        case Prosody::kPad: break;
      }
    }
  }
  if (used < 10)
    throw Error(ErrorCode::kInsufficientData, "fewer than 10 pairs could be segmented");
  Eigen::FullPivLU<Eigen::Matrix3d> lu(normal);
  if (lu.rank() < 3)
    throw Error(ErrorCode::kInsufficientData, "data lacks rises or falls to fit pitch steps");
  const Eigen::Vector3d sol = lu.solve(rhs);
  SpeakerParams sp;
  sp.pitch_base = sol[0];
  sp.rise_delta = sol[1];
  sp.fall_delta = sol[2];
  sp.tempo_min = tempo_min;
  sp.tempo_max = tempo_max;
  sp.noise_sigma = std::sqrt(noise_sq / static_cast<double>(noise_n));
  return sp;
}

std::vector<WordDraw> SampleWords(const Lexicon &lex, const CorpusConfig &cfg,
                                  std::uint64_t seed, std::size_t index) {
  if (lex.entries().empty()) throw Error(ErrorCode::kEmptyDataset, "empty lexicon");
  if (cfg.words_min < 1 || cfg.words_max < cfg.words_min)
    throw Error(ErrorCode::kInvalidConfig, "need 1 <= words_min <= words_max");
  std::vector<int> homographs, plain;
  for (std::size_t i = 0; i < lex.entries().size(); ++i)
    (lex.entries()[i].IsHomograph() ? homographs : plain).push_back(static_cast<int>(i));
  const bool split = cfg.homograph_token_share >= 0.0 && !homographs.empty() && !plain.empty();

  Rng rng(DeriveSeed(seed, 3 * index));
  const int n_words = rng.UniformInt(cfg.words_min, cfg.words_max);
  std::vector<WordDraw> words;
  for (int w = 0; w < n_words; ++w) {
    WordDraw draw;
    if (split) {
      const auto &pool = rng.Bernoulli(cfg.homograph_token_share) ? homographs : plain;
      draw.entry = pool[static_cast<std::size_t>(rng.UniformInt(0, static_cast<int>(pool.size()) - 1))];
    } else {
      draw.entry = rng.UniformInt(0, static_cast<int>(lex.entries().size()) - 1);
    }
    const auto &readings = lex.entries()[static_cast<std::size_t>(draw.entry)].readings;
    double u = rng.Uniform();
    draw.reading = static_cast<int>(readings.size()) - 1;
    for (std::size_t r = 0; r < readings.size(); ++r) {
      if (u < readings[r].weight) {
        draw.reading = static_cast<int>(r);
        break;
      }
      u -= readings[r].weight;
    }
    words.push_back(draw);
  }
  return words;
}

TtsLabelSequence ComposeLabels(const Lexicon &lex, std::span<const WordDraw> words,
                               const CorpusConfig &cfg, std::uint64_t boundary_seed) {
  Rng rng(boundary_seed);
  TtsLabelSequence seq;
  for (std::size_t w = 0; w < words.size(); ++w) {
    const auto &entry = lex.entries()[static_cast<std::size_t>(words[w].entry)];
    const auto &r = entry.readings[static_cast<std::size_t>(words[w].reading)];
    for (std::size_t k = 0; k < r.phonemes.size(); ++k)
      seq.items.push_back({r.phonemes[k], r.prosody[k]});
    if (w + 1 < words.size()) {
      if (rng.Bernoulli(cfg.pause_rate)) {
        seq.items.back().prosody = Prosody::kPause;
      } else if (!rng.Bernoulli(cfg.phrase_merge_rate)) {
        seq.items.back().prosody = Prosody::kPhraseBoundary;
      }
    }
  }
  if (!seq.empty() && rng.Bernoulli(cfg.question_rate))
    seq.items.back().prosody = Prosody::kQuestion;
  return seq;
}

LabeledUtterance GenerateUtterance(const Lexicon &lex, const CorpusConfig &cfg,
                                   const SpeakerParams &sp, std::uint64_t seed,
                                   std::size_t index) {
  LabeledUtterance utt;
  char id[64];
  std::snprintf(id, sizeof(id), "%s%06zu", cfg.id_prefix.c_str(), index);
  utt.id = id;
  const auto words = SampleWords(lex, cfg, seed, index);
  for (const auto &w : words) {
    utt.graphemes.push_back(lex.entries()[static_cast<std::size_t>(w.entry)].grapheme);
    utt.readings.push_back(w.reading);
  }
  utt.labels = ComposeLabels(lex, words, cfg, DeriveSeed(seed, 3 * index + 1));
  utt.features = Articulate(utt.labels, sp, DeriveSeed(seed, 3 * index + 2));
  return utt;
}

std::vector<LabeledUtterance> GenerateCorpus(const Lexicon &lex, std::size_t n_utts,
                                             const CorpusConfig &cfg,
                                             const SpeakerParams &sp, std::uint64_t seed,
                                             int jobs) {
  std::vector<LabeledUtterance> out(n_utts);
  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n_utts));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n_utts; ++i) out[i] = GenerateUtterance(lex, cfg, sp, seed, i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n_utts; i += n_threads)
          out[i] = GenerateUtterance(lex, cfg, sp, seed, i);
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

std::string JoinWords(std::span<const std::string> words) {
  std::string out;
  for (const auto &w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::vector<std::vector<std::string>> GenerateTextPool(
    const Lexicon &lex, std::size_t n, const CorpusConfig &cfg, std::uint64_t seed,
    std::span<const std::vector<std::string>> exclude) {
  std::set<std::string> banned;
  for (const auto &s : exclude) banned.insert(JoinWords(s));
  std::vector<std::vector<std::string>> out;
  const std::size_t limit = 100 * n + 1000;
  for (std::size_t k = 0; out.size() < n; ++k) {
    if (k >= limit)
      throw Error(ErrorCode::kInsufficientData, "cannot draw enough held-out sentences");
    std::vector<std::string> words;
    for (const auto &w : SampleWords(lex, cfg, seed, k))
      words.push_back(lex.entries()[static_cast<std::size_t>(w.entry)].grapheme);
    if (banned.count(JoinWords(words)) > 0) continue;
    out.push_back(std::move(words));
  }
  return out;
}

std::vector<std::string> AsrSurrogate(std::span<const std::string> graphemes,
                                      const Lexicon &lex, double err_rate,
                                      std::uint64_t seed) {
  if (!(err_rate >= 0.0 && err_rate <= 1.0))
    throw Error(ErrorCode::kInvalidRate, "err_rate must be in [0, 1]");
  const int n = static_cast<int>(lex.entries().size());
  Rng rng(DeriveSeed(seed, 0xa5));
  std::vector<std::string> out(graphemes.begin(), graphemes.end());
  for (auto &word : out) {
    if (!rng.Bernoulli(err_rate) || n < 2) continue;
    const int current = lex.IndexOf(word);
    int pick;
    if (current < 0) {
      pick = rng.UniformInt(0, n - 1);
    } else {
      pick = rng.UniformInt(0, n - 2);
      if (pick >= current) ++pick;
    }
    word = lex.entries()[static_cast<std::size_t>(pick)].grapheme;
  }
  return out;
}

}  // namespace ttslabel
