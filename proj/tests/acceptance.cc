// tests/acceptance.cc

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

// Acceptance suite. Usage: acceptance [criterion ...]; with no arguments every
// criterion runs. Prints one PASS/FAIL line per criterion and exits non-zero
// if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.h"
#include "ttslabel/cli.h"
#include "ttslabel/corpus_io.h"
#include "ttslabel/error.h"
#include "ttslabel/pipeline.h"
#include "ttslabel/rng.h"

namespace ttslabel {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void Require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string Pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * v);
  return buf;
}

const MoraInventory &Inv() {
  static const MoraInventory inv = MoraInventory::Default();
  return inv;
}

TtsLabelSequence RandomSequence(Rng *rng, int len) {
  TtsLabelSequence s;
  for (int i = 0; i < len; ++i)
    s.items.push_back({Inv().tokens()[static_cast<std::size_t>(
                           rng->UniformInt(0, static_cast<int>(Inv().tokens().size()) - 1))],
                       kAllProsody[static_cast<std::size_t>(rng->UniformInt(0, 5))]});
  return s;
}

// Levenshtein versus the recursive oracle on random token lists.
void MetricOracle(Outcome *o) {
  Rng rng(101);
  const std::vector<std::string> alphabet = {"a", "ka", "shi", "n"};
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
  for (int k = 0; k < 10000; ++k) {
    std::vector<std::string> a(static_cast<std::size_t>(rng.UniformInt(0, 12)));
    std::vector<std::string> b(static_cast<std::size_t>(rng.UniformInt(0, 12)));
    for (auto &t : a) t = alphabet[static_cast<std::size_t>(rng.UniformInt(0, 3))];
    for (auto &t : b) t = alphabet[static_cast<std::size_t>(rng.UniformInt(0, 3))];
    pairs.emplace_back(std::move(a), std::move(b));
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::size_t> got;
  for (const auto &[a, b] : pairs) got.push_back(Levenshtein(a, b));
  const double secs = Seconds(t0);
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k)
    mismatches += got[k] != oracle::EditDistanceMemo(pairs[k].first, pairs[k].second);
  o->detail << "10000 pairs, " << mismatches << " mismatches, " << secs << " s";
  o->Require(mismatches == 0, "exact agreement");
  o->Require(secs < 10.0, "under 10 s");
}

// Three systems over 200 constructed samples; the phoneme-exact sets follow
// fixed residue patterns so their intersection is known in closed form.
void ProtocolFidelity(Outcome *o) {
  const std::size_t n = 200;
  auto exact = [](int m, std::size_t i) {
    switch (m) {
      case 0: return i % 5 != 0;
      case 1: return i % 7 != 3;
      default: return i % 3 != 1;
    }
  };
  std::vector<TtsLabelSequence> refs;
  std::vector<std::vector<TtsLabelSequence>> hyps(3);
  std::vector<TtsLabelSequence> c_clean;  // C without the excluded-position rewrites
  std::size_t ref_moras = 0;
  for (std::size_t i = 0; i < n; ++i) {
    TtsLabelSequence r;
    const std::size_t len = 3 + i % 4;
    for (std::size_t j = 0; j < len; ++j)
      r.items.push_back({Inv().tokens()[(i * 7 + j * 3) % 30], kAllProsody[(i + j) % 6]});
    ref_moras += len;
    {
      TtsLabelSequence h = r;
      if (!exact(2, i)) h.items[0].mora = Inv().tokens()[(i * 7 + 1) % 30];
      c_clean.push_back(h);
    }
    for (int m = 0; m < 3; ++m) {
      TtsLabelSequence h = r;
      if (m == 0) h.items[0].prosody = Prosody::kRise;
      if (m == 1) h.items[len - 1].prosody = Prosody::kPad;
      if (m == 2 && i % 2 == 0) {
        // Excluded positions in the reference: any hypothesis label is ignored.
        for (auto &it : h.items)
          if (it.prosody == Prosody::kPause || it.prosody == Prosody::kQuestion)
            it.prosody = Prosody::kFall;
      }
      if (!exact(m, i)) h.items[0].mora = Inv().tokens()[(i * 7 + 1) % 30];
      hyps[static_cast<std::size_t>(m)].push_back(h);
    }
    refs.push_back(std::move(r));
  }
  const auto report = EvaluationProtocol(
      refs, {{"A", hyps[0]}, {"B", hyps[1]}, {"C", hyps[2]}}, DefaultExcludedLabels());

  std::vector<std::size_t> subset;
  for (std::size_t i = 0; i < n; ++i)
    if (exact(0, i) && exact(1, i) && exact(2, i)) subset.push_back(i);
  o->Require(report.subset == subset, "subset equals the intersection");
  o->Require(report.n_phoneme_exact_all_models == subset.size(), "subset size");

  bool counts_ok = true;
  for (int m = 0; m < 3; ++m) {
    std::size_t tp = 0, fp = 0, fn = 0, n_exact = 0;
    for (std::size_t i = 0; i < n; ++i) n_exact += exact(m, i);
    for (std::size_t i : subset) {
      for (std::size_t j = 0; j < refs[i].size(); ++j) {
        const Prosody r = refs[i].items[j].prosody;
        const Prosody h = hyps[static_cast<std::size_t>(m)][i].items[j].prosody;
        auto excluded = [](Prosody p) { return p == Prosody::kPause || p == Prosody::kQuestion; };
        if (excluded(r) || excluded(h)) continue;
        if (r != Prosody::kPad && r == h) {
          ++tp;
        } else {
          if (h != Prosody::kPad) ++fp;
          if (r != Prosody::kPad) ++fn;
        }
      }
    }
    const auto &e = report.models[static_cast<std::size_t>(m)];
    const std::size_t edits = n - n_exact;  // one substitution per inexact sample
    const double p = tp + fp ? double(tp) / double(tp + fp) : 0.0;
    const double r = tp + fn ? double(tp) / double(tp + fn) : 0.0;
    const double f1 = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    counts_ok = counts_ok && e.prosody.tp == tp && e.prosody.fp == fp && e.prosody.fn == fn &&
                e.n_phoneme_exact == n_exact && e.edits == edits && e.ref_moras == ref_moras &&
                std::fabs(e.prosody.f1 - f1) < 1e-12 &&
                std::fabs(e.cer - double(edits) / double(ref_moras)) < 1e-12;
    o->detail << e.name << " tp/fp/fn " << tp << "/" << fp << "/" << fn << "; ";
  }
  // Excluded labels touch nothing: C's rewrites at excluded reference
  // positions leave its counts identical to those of the unrewritten copy.
  const auto clean = EvaluationProtocol(refs, {{"A", hyps[0]}, {"B", hyps[1]}, {"C", c_clean}},
                                        DefaultExcludedLabels());
  o->Require(clean.models[2].prosody.tp == report.models[2].prosody.tp &&
                 clean.models[2].prosody.fp == report.models[2].prosody.fp &&
                 clean.models[2].prosody.fn == report.models[2].prosody.fn,
             "excluded labels contribute nothing");
  o->Require(counts_ok, "report values equal the enumeration");
  o->detail << "subset " << subset.size() << " of " << n;
}

template <typename Fn>
bool Throws(Fn &&fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code() == code;
  }
  return false;
}

void GrammarRoundTrip(Outcome *o) {
  Rng rng(303);
  const auto vocab = Vocabulary::Build(Inv());
  std::size_t bad_round = 0, bad_reject = 0, injected = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto seq = RandomSequence(&rng, rng.UniformInt(1, 24));
    const std::string text = Serialize(seq);
    const auto parsed = ParseLabelString(text, Inv());
    if (!(parsed == seq) || Serialize(parsed) != text) ++bad_round;
    if (!(vocab.Decode(vocab.Encode(seq)) == seq)) ++bad_round;

    // Injected malformations, each with the error it must raise.
    std::vector<std::string> toks;
    std::istringstream in(text);
    for (std::string t; in >> t;) toks.push_back(t);
    auto join = [](const std::vector<std::string> &v) {
      std::string s;
      for (const auto &t : v) s += (s.empty() ? "" : " ") + t;
      return s;
    };
    const std::size_t j = 2 * static_cast<std::size_t>(rng.UniformInt(0, int(seq.size()) - 1));
    std::vector<std::pair<std::string, ErrorCode>> cases;
    auto dropped = toks;
    dropped.pop_back();
    cases.emplace_back(join(dropped), ErrorCode::kGrammarViolation);
    auto swapped = toks;
    std::swap(swapped[j], swapped[j + 1]);
    cases.emplace_back(join(swapped), ErrorCode::kGrammarViolation);
    auto unknown = toks;
    unknown[j] = "qq";
    cases.emplace_back(join(unknown), ErrorCode::kUnknownToken);
    auto doubled = toks;
    doubled.insert(doubled.begin() + static_cast<std::ptrdiff_t>(j + 1), toks[j + 1]);
    cases.emplace_back(join(doubled), ErrorCode::kGrammarViolation);
    for (const auto &[s, code] : cases) {
      ++injected;
      if (!Throws([&] { ParseLabelString(s, Inv()); }, code)) ++bad_reject;
    }
    auto ids = vocab.Encode(seq);
    auto no_eos = ids;
    no_eos.pop_back();
    auto bad_id = ids;
    bad_id[1 + j] = vocab.size() + 5;
    auto two_moras = ids;
    two_moras[2 + j] = ids[1 + j];
    injected += 3;
    bad_reject += !Throws([&] { vocab.Decode(no_eos); }, ErrorCode::kMissingEos);
    bad_reject += !Throws([&] { vocab.Decode(bad_id); }, ErrorCode::kUnknownId);
    bad_reject += !Throws([&] { vocab.Decode(two_moras); }, ErrorCode::kGrammarViolation);
  }
  injected += 1;
  bad_reject += !Throws([] { ParseLabelString("", Inv()); }, ErrorCode::kGrammarViolation);
  o->detail << "1000 sequences, " << bad_round << " round-trip failures, " << bad_reject
            << " of " << injected << " malformations not rejected with the expected error";
  o->Require(bad_round == 0, "round trips");
  o->Require(bad_reject == 0, "typed rejections");
}

ModelConfig Tiny() {
  ModelConfig c;
  c.d_model = 8;
  c.n_heads = 2;
  c.n_enc_layers = 1;
  c.n_dec_layers = 1;
  c.ff_dim = 16;
  return c;
}

void GradientCheck(Outcome *o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto vocab = Vocabulary::Build(Inv());
  Rng rng(404);
  const auto x = oracle::RandomFeatures(&rng, 7, kFeatureDim);
  const auto ids = oracle::RandomIds(&rng, vocab, 4);
  double worst_f = 0.0, worst_d = 0.0, worst_pure_f = 0.0;
  // The 32-bit backpropagated gradient is checked against a central
  // difference of the same parameter values evaluated in 64-bit arithmetic;
  // a difference quotient of 32-bit losses is itself only good to ~1e-2.
  const auto mf = AnnotatorModel<float>::Init(Tiny(), vocab, 41);
  for (const auto &c :
       oracle::FiniteDifferenceCheck(mf, oracle::Widen(mf, 41), x, ids, 20, 1e-5, 43))
    worst_f = std::max(worst_f, c.rel_error);
  for (const auto &c : oracle::FiniteDifferenceCheck(mf, x, ids, 20, 1e-3, 43))
    worst_pure_f = std::max(worst_pure_f, c.rel_error);
  for (const auto &c :
       oracle::FiniteDifferenceCheck(AnnotatorModel<double>::Init(Tiny(), vocab, 41), x, ids,
                                     20, 1e-5, 43))
    worst_d = std::max(worst_d, c.rel_error);
  const double secs = Seconds(t0);
  o->detail << "20 directions; max rel error float " << worst_f << ", double " << worst_d
            << " (all-32-bit difference quotient: " << worst_pure_f << "), "
            << secs << " s";
  o->Require(worst_f <= 1e-3, "float within 1e-3");
  o->Require(worst_d <= 1e-6, "double within 1e-6");
  o->Require(secs < 30.0, "under 30 s");
}

void TeacherForcingConsistency(Outcome *o) {
  const auto vocab = Vocabulary::Build(Inv());
  Rng rng(505);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto m = AnnotatorModel<double>::Init(Tiny(), vocab, 500 + static_cast<std::uint64_t>(k));
    const auto x = oracle::RandomFeatures(&rng, rng.UniformInt(1, 30), kFeatureDim);
    const auto ids = oracle::RandomIds(&rng, vocab, rng.UniformInt(1, 12));
    const double tf = TeacherForcedLoss(m, x, ids) * static_cast<double>(ids.size() - 1);
    worst = std::max(worst, std::fabs(tf - oracle::IncrementalNll(m, x, ids)));
  }
  o->detail << "50 pairs, max |teacher-forced - incremental| = " << worst;
  o->Require(worst <= 1e-6, "within 1e-6");
}

void LogToStderr(const std::string &m) { std::cerr << "  " << m << std::endl; }

LogFn QuietLog() {
  return [](const std::string &m) {
    if (m.rfind("step ", 0) != 0 || m.find("000 ") != std::string::npos) LogToStderr(m);
  };
}

void AudioConditioning(Outcome *o) {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg;
  const World world = GenerateWorld(cfg, QuietLog());
  const auto e = RunHomographExperiment(cfg, world, QuietLog());
  const double secs = Seconds(t0);
  const auto &annt = e.report.models[0], &gt = e.report.models[1], &asr = e.report.models[2];
  const double cascade_h = e.homograph[1].accuracy(), annt_h = e.homograph[0].accuracy();
  o->detail << "steps " << cfg.train.steps << "; F1 annt " << Pct(annt.prosody.f1) << " gt-nlp "
            << Pct(gt.prosody.f1) << " asr-nlp " << Pct(asr.prosody.f1) << "; CER annt "
            << Pct(annt.cer) << " gt-nlp " << Pct(gt.cer) << " asr-nlp " << Pct(asr.cer)
            << "; homograph accuracy annt " << Pct(annt_h) << " gt-nlp " << Pct(cascade_h)
            << " asr-nlp " << Pct(e.homograph[2].accuracy()) << " over "
            << e.homograph[0].tokens << " tokens; F1 subset " << e.report.n_phoneme_exact_all_models
            << "; " << secs << " s";
  o->Require(cfg.train.steps <= 20000, "step budget");
  o->Require(annt.prosody.f1 - gt.prosody.f1 >= 0.10, "annt F1 exceeds gt-nlp by 10 points");
  o->Require(gt.prosody.f1 >= asr.prosody.f1, "gt-nlp F1 >= asr-nlp F1");
  o->Require(std::fabs(cascade_h - 0.70) <= 0.05, "cascade homograph accuracy within 70 +- 5");
  o->Require(annt_h > 0.90, "annt homograph accuracy above 90%");
  o->Require(secs <= 900.0, "15 minute budget");
}

void Augmentation(Outcome *o) {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.n_train = cfg.augment.n_labeled;
  cfg.n_text = cfg.augment.n_text;
  const World world = GenerateWorld(cfg, QuietLog());
  const auto e = RunAugmentExperiment(cfg, world, QuietLog());
  const double secs = Seconds(t0);
  const auto &base = e.report.models[0], &aug = e.report.models[1];
  o->detail << "K " << e.k << " K' " << e.k_prime << "; CER base " << Pct(base.cer)
            << " augmented " << Pct(aug.cer) << " (relative reduction "
            << Pct(e.relative_cer_reduction) << "); F1 base " << Pct(base.prosody.f1)
            << " augmented " << Pct(aug.prosody.f1) << " over "
            << e.report.n_phoneme_exact_all_models << " utterances; " << secs << " s";
  o->Require(e.relative_cer_reduction >= 0.20, "relative CER reduction >= 20%");
  o->Require(aug.prosody.f1 > base.prosody.f1, "augmented F1 strictly higher");
  o->Require(secs <= 1200.0, "20 minute budget");
}

void AugmentationConsistency(Outcome *o) {
  const auto lex = GenerateLexicon(LexiconConfig{}, Inv(), 808);
  CorpusConfig cc;
  cc.homograph_token_share = 0.5;
  SpeakerParams sp;
  sp.noise_sigma = 0.0;
  // A labeled corpus supplies sentences together with their true labels.
  const auto truth = GenerateCorpus(lex, 1000, cc, sp, 809);
  std::vector<std::vector<std::string>> text;
  for (const auto &u : truth) text.push_back(u.graphemes);
  const auto pseudo = MakePseudoLabels(text, lex, ResolutionPolicy::kMajorityPrior);
  const auto aug = SynthesizeAugmented(pseudo, sp, 810, text);
  std::size_t mismatches = 0, differs = 0, differs_ok = 0;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    const bool ok = InvertFeatures(aug[i].features, sp, Inv()) == pseudo[i];
    mismatches += !ok;
    if (!(pseudo[i] == truth[i].labels)) {
      ++differs;
      differs_ok += ok;
    }
  }
  o->detail << aug.size() << " samples, " << mismatches << " inversion mismatches; " << differs
            << " pseudo labels differ from the true labels, " << differs_ok
            << " of them recovered exactly";
  o->Require(aug.size() == 1000 && mismatches == 0, "exact recovery");
  o->Require(differs > 0 && differs_ok == differs, "covers pseudo labels that differ");
}

std::map<std::string, std::string> Snapshot(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::string bytes = ReadFile(e.path());
    if (e.path().filename() == "manifest.json") {
      auto j = nlohmann::ordered_json::parse(bytes);
      j.erase("wall_clock");
      bytes = j.dump();
    }
    files[fs::relative(e.path(), root).generic_string()] = std::move(bytes);
  }
  return files;
}

// Reduced-scale run of every CLI stage, twice, compared byte for byte.
void Determinism(Outcome *o) {
  const fs::path root = fs::temp_directory_path() / "ttslabel_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  WriteFile(root / "recipe.cfg",
            "data.n_train = 120\ndata.n_val = 20\ndata.n_test = 40\ndata.n_text = 120\n"
            "train.steps = 300\ntrain.warmup_steps = 50\ntrain.checkpoint_every = 100\n"
            "augment.n_labeled = 120\naugment.n_text = 120\n");
  const std::string cfg = (root / "recipe.cfg").string();
  auto run = [&](const std::string &name) {
    const fs::path d = root / name;
    const std::string w = (d / "world").string();
    std::vector<std::vector<std::string>> steps = {
        {"gen", "--out", w},
        {"augment", "--out", (d / "aug").string(), "--labeled", w + "/train", "--text",
         w + "/text.txt"},
        {"train", "--out", (d / "model").string(), "--data", w, "--extra",
         (d / "aug/corpus").string()},
        {"annotate", "--out", (d / "annt").string(), "--system", "annt", "--data", w, "--model",
         (d / "model/model.ckpt").string(), "--beam", "3"},
        {"annotate", "--out", (d / "cascade").string(), "--system", "cascade", "--data", w},
        {"evaluate", "--out", (d / "eval").string(), "--data", w, "--hyp",
         "annt=" + (d / "annt/hyp.tsv").string(), "--hyp",
         "cascade=" + (d / "cascade/hyp.tsv").string()},
        {"experiment", "homograph", "--out", (d / "exp").string()},
    };
    for (auto &s : steps) {
      std::vector<std::string> args = {"ttslabel", "--seed", "5", "--jobs", "2", "--config", cfg};
      args.insert(args.end(), s.begin(), s.end());
      std::cerr << "  ttslabel " << s[0] << std::endl;
      const int rc = RunCli(args);
      if (rc != 0) {
        o->Require(false, s[0] + " exited with " + std::to_string(rc));
        return std::map<std::string, std::string>{};
      }
    }
    return Snapshot(d);
  };
  const auto a = run("a");
  const auto b = run("b");
  std::size_t differing = 0;
  for (const auto &[k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || it->second != v) {
      ++differing;
      if (differing <= 3) o->detail << "differs: " << k << "; ";
    }
  }
  std::size_t checkpoints = 0;
  for (const auto &[k, v] : a) checkpoints += k.size() > 5 && k.substr(k.size() - 5) == ".ckpt";
  o->detail << a.size() << " files compared (" << checkpoints << " checkpoints), " << differing
            << " differ";
  o->Require(!a.empty() && a.size() == b.size() && differing == 0, "byte-identical outputs");
  if (o->pass) fs::remove_all(root);
}

void FrozenEncoder(Outcome *o) {
  const auto lex = GenerateLexicon(LexiconConfig{}, Inv(), 1001);
  const auto corpus = GenerateCorpus(lex, 60, CorpusConfig{}, SpeakerParams{}, 1002);
  const auto vocab = Vocabulary::Build(Inv());
  const auto ex = MakeExamples(corpus, vocab);
  ModelConfig mc;
  mc.d_model = 16;
  mc.n_heads = 2;
  mc.n_enc_layers = 1;
  mc.n_dec_layers = 1;
  mc.ff_dim = 32;
  mc.freeze_encoder = true;
  const auto init = AnnotatorModel<float>::Init(mc, vocab, 1003);
  TrainConfig tc;
  tc.steps = 1000;
  tc.batch_size = 4;
  tc.warmup_steps = 100;
  tc.checkpoint_every = 250;
  const auto r = Train(init, ex, ex, tc);
  const bool enc_same = EncoderChecksum(r.last) == EncoderChecksum(init) &&
                        EncoderChecksum(r.best) == EncoderChecksum(init);
  const bool dec_diff = DecoderChecksum(r.last) != DecoderChecksum(init);
  o->detail << "1000 steps; encoder checksum " << (enc_same ? "unchanged" : "CHANGED")
            << ", decoder checksum " << (dec_diff ? "changed" : "UNCHANGED");
  o->Require(enc_same, "encoder frozen");
  o->Require(dec_diff, "decoder trained");
}

struct Criterion {
  int id;
  const char *name;
  void (*fn)(Outcome *);
};

const std::vector<Criterion> &Criteria() {
  static const std::vector<Criterion> c = {
      {1, "metric oracle equivalence", MetricOracle},
      {2, "protocol fidelity", ProtocolFidelity},
      {3, "grammar round-trip", GrammarRoundTrip},
      {4, "gradient correctness", GradientCheck},
      {5, "teacher-forcing consistency", TeacherForcingConsistency},
      {6, "audio-conditioning experiment", AudioConditioning},
      {7, "augmentation experiment", Augmentation},
      {8, "augmentation consistency", AugmentationConsistency},
      {9, "determinism", Determinism},
      {10, "frozen encoder", FrozenEncoder},
  };
  return c;
}

}  // namespace
}  // namespace ttslabel

int main(int argc, char **argv) {
  using namespace ttslabel;
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  bool all_pass = true;
  for (const auto &c : Criteria()) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    Outcome o;
    try {
      c.fn(&o);
    } catch (const std::exception &e) {
      o.Require(false, std::string("exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << c.id << " (" << c.name << "): " << (o.pass ? "PASS" : "FAIL")
              << " -- " << o.detail.str() << std::endl;
  }
  return all_pass ? 0 : 1;
}
