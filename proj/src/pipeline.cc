// src/pipeline.cc

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

#include "ttslabel/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <thread>
#include <utility>

#include "ttslabel/corpus_io.h"
#include "ttslabel/error.h"
#include "ttslabel/rng.h"

namespace ttslabel {

namespace {

const char *PolicyName(ResolutionPolicy p) {
  return p == ResolutionPolicy::kMajorityPrior ? "majority" : "first";
}

ResolutionPolicy ParsePolicy(const std::string &s) {
  if (s == "majority") return ResolutionPolicy::kMajorityPrior;
  if (s == "first") return ResolutionPolicy::kFirstEntry;
  throw Error(ErrorCode::kInvalidConfig, "policy must be 'majority' or 'first', got '" + s + "'");
}

const char *ModeName(SearchMode m) { return m == SearchMode::kGreedy ? "greedy" : "beam"; }

SearchMode ParseMode(const std::string &s) {
  if (s == "greedy") return SearchMode::kGreedy;
  if (s == "beam") return SearchMode::kBeam;
  throw Error(ErrorCode::kInvalidConfig, "decode.mode must be 'greedy' or 'beam', got '" + s + "'");
}

// Every configurable field, visited with its key. Used for reading, writing
// and the list of known keys, so the three cannot drift apart.
template <typename Config, typename Fn>
void VisitFields(Config &c, Fn &&f) {
  f("seed", c.seed);
  f("jobs", c.jobs);
  f("excluded_labels", c.excluded);
  f("lexicon.n_words", c.lexicon.n_words);
  f("lexicon.homograph_rate", c.lexicon.homograph_rate);
  f("lexicon.majority_share", c.lexicon.majority_share);
  f("lexicon.prosody_only_fraction", c.lexicon.prosody_only_fraction);
  f("lexicon.min_moras", c.lexicon.min_moras);
  f("lexicon.max_moras", c.lexicon.max_moras);
  f("corpus.words_min", c.corpus.words_min);
  f("corpus.words_max", c.corpus.words_max);
  f("corpus.homograph_token_share", c.corpus.homograph_token_share);
  f("corpus.phrase_merge_rate", c.corpus.phrase_merge_rate);
  f("corpus.pause_rate", c.corpus.pause_rate);
  f("corpus.question_rate", c.corpus.question_rate);
  f("speaker.pitch_base", c.speaker.pitch_base);
  f("speaker.rise_delta", c.speaker.rise_delta);
  f("speaker.fall_delta", c.speaker.fall_delta);
  f("speaker.tempo_min", c.speaker.tempo_min);
  f("speaker.tempo_max", c.speaker.tempo_max);
  f("speaker.noise_sigma", c.speaker.noise_sigma);
  f("data.n_train", c.n_train);
  f("data.n_val", c.n_val);
  f("data.n_test", c.n_test);
  f("data.n_text", c.n_text);
  f("model.context", c.model.context);
  f("model.d_model", c.model.d_model);
  f("model.n_heads", c.model.n_heads);
  f("model.n_enc_layers", c.model.n_enc_layers);
  f("model.n_dec_layers", c.model.n_dec_layers);
  f("model.ff_dim", c.model.ff_dim);
  f("model.max_src_len", c.model.max_src_len);
  f("model.max_tgt_len", c.model.max_tgt_len);
  f("model.freeze_encoder", c.model.freeze_encoder);
  f("train.steps", c.train.steps);
  f("train.batch_size", c.train.batch_size);
  f("train.peak_lr", c.train.peak_lr);
  f("train.warmup_steps", c.train.warmup_steps);
  f("train.checkpoint_every", c.train.checkpoint_every);
  f("train.beta1", c.train.beta1);
  f("train.beta2", c.train.beta2);
  f("train.adam_eps", c.train.adam_eps);
  f("train.clip_norm", c.train.clip_norm);
  f("train.token_dropout", c.train.token_dropout);
  f("decode.mode", c.decode.mode);
  f("decode.beam", c.decode.beam);
  f("decode.max_len", c.decode.max_len);
  f("decode.length_norm", c.decode.length_norm);
  f("cascade.asr_err_rate", c.asr_err_rate);
  f("cascade.policy", c.policy);
  f("augment.n_labeled", c.augment.n_labeled);
  f("augment.n_text", c.augment.n_text);
  f("augment.aux_noise_sigma", c.augment.aux_noise_sigma);
  f("augment.dedupe", c.augment.dedupe);
  f("augment.real_repeat", c.augment.real_repeat);
}

struct Reader {
  const KeyValueConfig &kv;
  void operator()(const char *k, int &v) const { v = kv.GetInt(k, v); }
  void operator()(const char *k, double &v) const { v = kv.GetDouble(k, v); }
  void operator()(const char *k, bool &v) const { v = kv.GetBool(k, v); }
  void operator()(const char *k, std::uint64_t &v) const { v = kv.GetU64(k, v); }
  void operator()(const char *k, ProsodySet &v) const {
    if (auto s = kv.Get(k)) v = ProsodySet::Parse(*s);
  }
  void operator()(const char *k, ResolutionPolicy &v) const {
    if (auto s = kv.Get(k)) v = ParsePolicy(*s);
  }
  void operator()(const char *k, SearchMode &v) const {
    if (auto s = kv.Get(k)) v = ParseMode(*s);
  }
};

struct Writer {
  KeyValueConfig *kv;
  void operator()(const char *k, int v) const { kv->Set(k, std::to_string(v)); }
  void operator()(const char *k, double v) const { kv->Set(k, FormatDouble(v)); }
  void operator()(const char *k, bool v) const { kv->Set(k, v ? "true" : "false"); }
  void operator()(const char *k, std::uint64_t v) const { kv->Set(k, std::to_string(v)); }
  void operator()(const char *k, const ProsodySet &v) const { kv->Set(k, v.ToString()); }
  void operator()(const char *k, ResolutionPolicy v) const { kv->Set(k, PolicyName(v)); }
  void operator()(const char *k, SearchMode v) const { kv->Set(k, ModeName(v)); }
};

void Log(const LogFn &log, const std::string &msg) {
  if (log) log(msg);
}

std::string Fmt(const char *fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

RunConfig::RunConfig() {
  // Desk-scale experiment defaults: half of the word slots are homographs and
  // about half of the word boundaries carry no phrase break, so a text-only
  // front-end cannot recover the prosody from spelling alone.
  corpus.homograph_token_share = 0.5;
  corpus.phrase_merge_rate = 0.55;
  train.steps = 8000;
  train.checkpoint_every = 500;
}

RunConfig RunConfig::FromKeyValue(const KeyValueConfig &kv) {
  std::vector<std::string> known;
  RunConfig probe;
  VisitFields(probe, [&known](const char *k, auto &) { known.emplace_back(k); });
  kv.CheckKnown(known);
  RunConfig c;
  VisitFields(c, Reader{kv});
  c.Validate();
  return c;
}

KeyValueConfig RunConfig::ToKeyValue() const {
  KeyValueConfig kv;
  VisitFields(*this, Writer{&kv});
  return kv;
}

void RunConfig::Validate() const {
  auto fail = [](const std::string &m) { throw Error(ErrorCode::kInvalidConfig, m); };
  if (jobs < 1) fail("jobs must be >= 1");
  if (n_train < 1 || n_val < 1 || n_test < 1 || n_text < 0) fail("bad data sizes");
  if (!(asr_err_rate >= 0.0 && asr_err_rate <= 1.0))
    throw Error(ErrorCode::kInvalidRate, "cascade.asr_err_rate must be in [0, 1]");
  if (decode.beam < 1) fail("decode.beam must be >= 1");
  speaker.Validate();
  model.Validate();
  train.Validate();
  augment.Validate();
  if (model.input_dim != kFeatureDim) fail("model input dim must match the feature dim");
}

RunSeeds::RunSeeds(std::uint64_t seed)
    : lexicon(DeriveSeed(seed, 1)),
      train(DeriveSeed(seed, 2)),
      val(DeriveSeed(seed, 3)),
      test(DeriveSeed(seed, 4)),
      text(DeriveSeed(seed, 5)),
      model_init(DeriveSeed(seed, 6)),
      training(DeriveSeed(seed, 7)),
      asr(DeriveSeed(seed, 8)),
      augment(DeriveSeed(seed, 9)) {}

World GenerateWorld(const RunConfig &cfg, const LogFn &log) {
  cfg.Validate();
  const RunSeeds seeds(cfg.seed);
  World w;
  w.inventory = MoraInventory::Default();
  w.lexicon = GenerateLexicon(cfg.lexicon, w.inventory, seeds.lexicon);
  w.speaker = cfg.speaker;
  CorpusConfig cc = cfg.corpus;
  cc.id_prefix = "train";
  w.train = GenerateCorpus(w.lexicon, static_cast<std::size_t>(cfg.n_train), cc, w.speaker,
                           seeds.train, cfg.jobs);
  cc.id_prefix = "val";
  w.val = GenerateCorpus(w.lexicon, static_cast<std::size_t>(cfg.n_val), cc, w.speaker,
                         seeds.val, cfg.jobs);
  cc.id_prefix = "test";
  w.test = GenerateCorpus(w.lexicon, static_cast<std::size_t>(cfg.n_test), cc, w.speaker,
                          seeds.test, cfg.jobs);
  // Text-only pool, disjoint from every labeled sentence.
  std::vector<std::vector<std::string>> used;
  for (const auto *split : {&w.train, &w.val, &w.test})
    for (const auto &u : *split) used.push_back(u.graphemes);
  w.text = GenerateTextPool(w.lexicon, static_cast<std::size_t>(cfg.n_text), cfg.corpus,
                            seeds.text, used);
  Log(log, "generated " + std::to_string(w.train.size()) + "/" + std::to_string(w.val.size()) +
               "/" + std::to_string(w.test.size()) + " train/val/test utterances, " +
               std::to_string(w.text.size()) + " text-only sentences, " +
               std::to_string(w.lexicon.num_homographs()) + " homographs");
  return w;
}

void WriteWorld(const std::filesystem::path &dir, const World &world) {
  std::filesystem::create_directories(dir);
  world.inventory.Save(dir / "inventory.txt");
  world.lexicon.Save(dir / "lexicon.tsv");
  SaveSpeaker(dir / "speaker.cfg", world.speaker);
  WriteTextPool(dir / "text.txt", world.text);
  WriteCorpus(dir / "train", world.train);
  WriteCorpus(dir / "val", world.val);
  WriteCorpus(dir / "test", world.test);
}

MoraInventory ReadInventory(const std::filesystem::path &dir) {
  return MoraInventory::Load(dir / "inventory.txt");
}

Lexicon ReadLexicon(const std::filesystem::path &dir, const MoraInventory &inventory) {
  return Lexicon::Load(dir / "lexicon.tsv", inventory);
}

std::vector<Example> MakeExamples(const std::vector<LabeledUtterance> &utts,
                                  const Vocabulary &vocab) {
  std::vector<Example> out;
  out.reserve(utts.size());
  for (const auto &u : utts) out.push_back({&u.features, vocab.Encode(u.labels)});
  return out;
}

TrainResult TrainAnnotator(const RunConfig &cfg, const Vocabulary &vocab,
                           const std::vector<LabeledUtterance> &train,
                           const std::vector<LabeledUtterance> &val, const LogFn &log) {
  const RunSeeds seeds(cfg.seed);
  const auto init = AnnotatorModel<float>::Init(cfg.model, vocab, seeds.model_init);
  TrainConfig tc = cfg.train;
  tc.seed = seeds.training;
  const auto tr = MakeExamples(train, vocab), va = MakeExamples(val, vocab);
  Log(log, "training on " + std::to_string(tr.size()) + " pairs, " +
               std::to_string(init.params().size()) + " parameters, " +
               std::to_string(tc.steps) + " steps");
  return Train(init, tr, va, tc, [&log](const TrainLogRow &r) {
    if (r.val_loss)
      Log(log, "step " + std::to_string(r.step) + " train_loss " + Fmt("%.4f", r.train_loss) +
                   " val_loss " + Fmt("%.4f", *r.val_loss));
  });
}

std::vector<Annotation> AnnotateAll(const AnnotatorModel<float> &model,
                                    const std::vector<LabeledUtterance> &utts,
                                    const DecodeOptions &options, int jobs) {
  std::vector<Annotation> out(utts.size());
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)),
                            std::max<std::size_t>(utts.size(), 1));
  std::vector<std::exception_ptr> errors(n_threads);
  auto work = [&](std::size_t t) {
    try {
      for (std::size_t i = t; i < utts.size(); i += n_threads)
        out[i] = Annotate(model, utts[i].features, options);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (n_threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work, t);
    for (auto &th : pool) th.join();
  }
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<TtsLabelSequence> CascadeAll(const std::vector<LabeledUtterance> &utts,
                                         const Lexicon &lex, ResolutionPolicy policy,
                                         double err_rate, std::uint64_t seed) {
  std::vector<TtsLabelSequence> out;
  out.reserve(utts.size());
  for (std::size_t i = 0; i < utts.size(); ++i)
    out.push_back(
        CascadeAnnotate(utts[i].graphemes, lex, policy, err_rate, DeriveSeed(seed, i)).labels);
  return out;
}

std::vector<TtsLabelSequence> Labels(const std::vector<LabeledUtterance> &utts) {
  std::vector<TtsLabelSequence> out;
  out.reserve(utts.size());
  for (const auto &u : utts) out.push_back(u.labels);
  return out;
}

std::vector<int> AlignMoras(const PhonemeSeq &ref, const PhonemeSeq &hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t & { return d[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      at(i, j) = std::min({at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1),
                           at(i - 1, j) + 1, at(i, j - 1) + 1});
  std::vector<int> map(n, -1);
  std::size_t i = n, j = m;
  while (i > 0 && j > 0) {
    const bool same = ref[i - 1] == hyp[j - 1];
    if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
      if (same) map[i - 1] = static_cast<int>(j - 1);
      --i;
      --j;
    } else if (at(i, j) == at(i - 1, j) + 1) {
      --i;
    } else {
      --j;
    }
  }
  return map;
}

HomographScore HomographAccuracy(const Lexicon &lex, const std::vector<LabeledUtterance> &refs,
                                 const std::vector<TtsLabelSequence> &hyps) {
  if (refs.size() != hyps.size())
    throw Error(ErrorCode::kRaggedInputs, "references and hypotheses differ in count");
  HomographScore s;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto &ref = refs[i];
    const auto &hyp = hyps[i].items;
    const auto map = AlignMoras(SplitStreams(ref.labels).first, SplitStreams(hyps[i]).first);
    std::size_t pos = 0;
    for (std::size_t w = 0; w < ref.graphemes.size(); ++w) {
      const LexEntry *e = lex.Find(ref.graphemes[w]);
      if (e == nullptr || w >= ref.readings.size() || ref.readings[w] < 0)
        throw Error(ErrorCode::kFormat, ref.id + " lacks reading annotations");
      const std::size_t len =
          e->readings[static_cast<std::size_t>(ref.readings[w])].phonemes.size();
      if (e->IsHomograph()) {
        ++s.tokens;
        bool moras_ok = true, prosody_ok = true;
        for (std::size_t k = 0; k < len; ++k) {
          const int h = map[pos + k];
          moras_ok = moras_ok && h >= 0 && (k == 0 || h == map[pos + k - 1] + 1);
          if (!moras_ok) break;
          if (k + 1 < len)
            prosody_ok = prosody_ok &&
                         hyp[static_cast<std::size_t>(h)].prosody == ref.labels.items[pos + k].prosody;
        }
        s.mora_errors += moras_ok ? 0 : 1;
        s.correct += moras_ok && prosody_ok ? 1 : 0;
      }
      pos += len;
    }
  }
  return s;
}

std::vector<std::string> RankSystems(const EvalReport &report) {
  std::vector<const ModelEval *> order;
  for (const auto &m : report.models) order.push_back(&m);
  std::stable_sort(order.begin(), order.end(), [](const ModelEval *a, const ModelEval *b) {
    if (a->prosody.f1 != b->prosody.f1) return a->prosody.f1 > b->prosody.f1;
    return a->cer < b->cer;
  });
  std::vector<std::string> names;
  for (const auto *m : order) names.push_back(m->name);
  return names;
}

namespace {

std::string JoinRanking(const std::vector<std::string> &names) {
  std::string s;
  for (const auto &n : names) s += (s.empty() ? "" : " > ") + n;
  return s;
}

std::string TrainingSummary(const std::string &prefix, const TrainResult &t) {
  return prefix + ".best_checkpoint = " + std::to_string(t.best_checkpoint) + "\n" + prefix +
         ".best_val_loss = " + Fmt("%.6f", t.checkpoint_val_losses[t.best_checkpoint]) + "\n";
}

}  // namespace

HomographExperiment RunHomographExperiment(const RunConfig &cfg, const World &world,
                                           const LogFn &log) {
  const RunSeeds seeds(cfg.seed);
  const auto vocab = Vocabulary::Build(world.inventory);
  HomographExperiment e;
  e.training = TrainAnnotator(cfg, vocab, world.train, world.val, log);
  Log(log, "annotating " + std::to_string(world.test.size()) + " test utterances");
  const auto ann = AnnotateAll(e.training.best, world.test, cfg.decode, cfg.jobs);
  std::vector<TtsLabelSequence> annt;
  for (const auto &a : ann) {
    annt.push_back(a.labels);
    e.n_repaired += a.repaired ? 1 : 0;
  }
  const auto gt = CascadeAll(world.test, world.lexicon, cfg.policy, 0.0, seeds.asr);
  const auto asr = CascadeAll(world.test, world.lexicon, cfg.policy, cfg.asr_err_rate, seeds.asr);
  e.report = EvaluationProtocol(Labels(world.test),
                                {{"annt", annt}, {"gt-nlp", gt}, {"asr-nlp", asr}}, cfg.excluded);
  for (const auto *hyps : {&std::as_const(annt), &gt, &asr})
    e.homograph.push_back(HomographAccuracy(world.lexicon, world.test, *hyps));
  e.ranking = RankSystems(e.report);
  return e;
}

std::string FormatHomographExperiment(const HomographExperiment &e) {
  std::string s = "experiment = homograph\n" + FormatReportText(e.report);
  for (std::size_t i = 0; i < e.report.models.size(); ++i) {
    const auto &h = e.homograph[i];
    const std::string &n = e.report.models[i].name;
    s += n + ".homograph_tokens = " + std::to_string(h.tokens) + "\n";
    s += n + ".homograph_mora_errors = " + std::to_string(h.mora_errors) + "\n";
    s += n + ".homograph_accuracy = " + Fmt("%.6f", h.accuracy()) + "\n";
  }
  s += "annt.repaired = " + std::to_string(e.n_repaired) + "\n";
  s += TrainingSummary("annt", e.training);
  s += "ranking = " + JoinRanking(e.ranking) + "\n";
  return s;
}

AugmentExperiment RunAugmentExperiment(const RunConfig &cfg, const World &world,
                                       const LogFn &log) {
  const RunSeeds seeds(cfg.seed);
  const auto k = static_cast<std::size_t>(cfg.augment.n_labeled);
  const auto k_prime = static_cast<std::size_t>(cfg.augment.n_text);
  if (k > world.train.size() || k_prime > world.text.size())
    throw Error(ErrorCode::kInsufficientData, "world holds fewer pairs or sentences than K, K'");
  const std::vector<LabeledUtterance> d(world.train.begin(),
                                        world.train.begin() + static_cast<std::ptrdiff_t>(k));
  const std::vector<std::vector<std::string>> text(
      world.text.begin(), world.text.begin() + static_cast<std::ptrdiff_t>(k_prime));

  AugmentExperiment e;
  e.k = k;
  e.k_prime = k_prime;
  AugmentConfig ac = cfg.augment;
  ac.policy = cfg.policy;
  const auto aug = RunAugmentation(d, text, world.lexicon, ac, seeds.augment, cfg.jobs);
  e.fitted = aug.speaker;
  auto merged = Merge(d, aug.augmented, ac.dedupe);
  for (int r = 1; r < ac.real_repeat; ++r) merged.insert(merged.end(), d.begin(), d.end());
  e.n_merged = merged.size();
  Log(log, "fitted synthesizer: rise " + Fmt("%.4f", e.fitted.rise_delta) + " fall " +
               Fmt("%.4f", e.fitted.fall_delta) + "; merged set " + std::to_string(merged.size()));

  const auto vocab = Vocabulary::Build(world.inventory);
  Log(log, "base model");
  e.base_training = TrainAnnotator(cfg, vocab, d, world.val, log);
  Log(log, "augmented model");
  e.augmented_training = TrainAnnotator(cfg, vocab, merged, world.val, log);

  std::vector<TtsLabelSequence> base, augmented;
  for (const auto &a : AnnotateAll(e.base_training.best, world.test, cfg.decode, cfg.jobs))
    base.push_back(a.labels);
  for (const auto &a : AnnotateAll(e.augmented_training.best, world.test, cfg.decode, cfg.jobs))
    augmented.push_back(a.labels);
  e.report = EvaluationProtocol(Labels(world.test), {{"base", base}, {"augmented", augmented}},
                                cfg.excluded);
  const double cb = e.report.models[0].cer, ca = e.report.models[1].cer;
  e.relative_cer_reduction = cb > 0.0 ? (cb - ca) / cb : 0.0;
  return e;
}

std::string FormatAugmentExperiment(const AugmentExperiment &e) {
  std::string s = "experiment = augment\n" + FormatReportText(e.report);
  s += "k = " + std::to_string(e.k) + "\n";
  s += "k_prime = " + std::to_string(e.k_prime) + "\n";
  s += "n_merged = " + std::to_string(e.n_merged) + "\n";
  s += "fitted.pitch_base = " + Fmt("%.6f", e.fitted.pitch_base) + "\n";
  s += "fitted.rise_delta = " + Fmt("%.6f", e.fitted.rise_delta) + "\n";
  s += "fitted.fall_delta = " + Fmt("%.6f", e.fitted.fall_delta) + "\n";
  s += "fitted.noise_sigma = " + Fmt("%.6f", e.fitted.noise_sigma) + "\n";
  s += TrainingSummary("base", e.base_training);
  s += TrainingSummary("augmented", e.augmented_training);
  s += "relative_cer_reduction = " + Fmt("%.6f", e.relative_cer_reduction) + "\n";
  s += "ranking = " + JoinRanking(RankSystems(e.report)) + "\n";
  return s;
}

}  // namespace ttslabel
