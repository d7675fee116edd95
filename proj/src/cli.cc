// src/cli.cc

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

#include "ttslabel/cli.h"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "ttslabel/corpus_io.h"
#include "ttslabel/error.h"
#include "ttslabel/pipeline.h"
#include "ttslabel/rng.h"

namespace ttslabel {

namespace {

namespace fs = std::filesystem;

void Progress(const std::string &msg) { std::cerr << "[ttslabel] " << msg << std::endl; }

struct GlobalFlags {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::string> excluded;
};

RunConfig ResolveConfig(const GlobalFlags &g) {
  KeyValueConfig kv;
  if (!g.config_path.empty()) kv = KeyValueConfig::Load(g.config_path);
  if (g.seed) kv.Set("seed", std::to_string(*g.seed));
  if (g.jobs) kv.Set("jobs", std::to_string(*g.jobs));
  if (g.excluded) kv.Set("excluded_labels", *g.excluded);
  return RunConfig::FromKeyValue(kv);
}

std::string HexHash(const std::string &bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(HashString(bytes)));
  return buf;
}

// Records the command, the effective configuration and a hash of every file
// under the output directory. "wall_clock" is the only field that varies
// between otherwise identical runs.
void WriteManifest(const fs::path &out, const std::string &command, const RunConfig &cfg,
                   const nlohmann::ordered_json &summary, double seconds) {
  nlohmann::ordered_json m;
  m["command"] = command;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  const KeyValueConfig kv = cfg.ToKeyValue();
  for (const auto &[k, v] : kv.values()) c[k] = v;
  m["config"] = c;
  m["summary"] = summary;
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(out)) {
    if (!e.is_regular_file()) continue;
    const std::string rel = fs::relative(e.path(), out).generic_string();
    if (rel == "manifest.json") continue;
    files[rel] = HexHash(ReadFile(e.path()));
  }
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (const auto &[k, v] : files) f[k] = v;
  m["outputs"] = f;
  m["wall_clock"] = seconds;
  WriteFile(out / "manifest.json", m.dump(2) + "\n");
}

// Path of a directory without a trailing separator, so parent_path() works.
fs::path Normal(const std::string &p) {
  fs::path r = fs::path(p).lexically_normal();
  if (!r.has_filename()) r = r.parent_path();
  return r;
}

std::vector<LabeledUtterance> ReadSplit(const fs::path &data, const std::string &split,
                                        const MoraInventory &inv) {
  return ReadCorpus(data / split, inv);
}

using Summary = nlohmann::ordered_json;

Summary SeedSummary(std::uint64_t seed) {
  const RunSeeds s(seed);
  return {{"lexicon", s.lexicon}, {"train", s.train}, {"val", s.val}, {"test", s.test},
          {"text", s.text}, {"model_init", s.model_init}, {"training", s.training},
          {"asr", s.asr}, {"augment", s.augment}};
}

void CmdGen(const RunConfig &cfg, const fs::path &out, Summary *sum) {
  const World w = GenerateWorld(cfg, Progress);
  WriteWorld(out, w);
  *sum = {{"n_train", w.train.size()}, {"n_val", w.val.size()}, {"n_test", w.test.size()},
          {"n_text", w.text.size()}, {"n_homographs", w.lexicon.num_homographs()},
          {"seeds", SeedSummary(cfg.seed)}};
  Progress("world written to " + out.string());
}

struct TrainArgs {
  std::string data, split = "train", val_split = "val";
  std::vector<std::string> extra;
};

void CmdTrain(const RunConfig &cfg, const fs::path &out, const TrainArgs &a, Summary *sum) {
  const fs::path data = Normal(a.data);
  const auto inv = ReadInventory(data);
  auto train = ReadSplit(data, a.split, inv);
  if (!a.extra.empty()) {
    const auto real = train;
    for (int r = 1; r < cfg.augment.real_repeat; ++r)
      train.insert(train.end(), real.begin(), real.end());
  }
  for (const auto &x : a.extra) {
    auto more = ReadCorpus(Normal(x), inv);
    train.insert(train.end(), std::make_move_iterator(more.begin()),
                 std::make_move_iterator(more.end()));
  }
  const auto val = ReadSplit(data, a.val_split, inv);
  const auto vocab = Vocabulary::Build(inv);
  const auto r = TrainAnnotator(cfg, vocab, train, val, Progress);
  fs::create_directories(out);
  SaveCheckpoint(out / "model.ckpt", r.best);
  SaveCheckpoint(out / "last.ckpt", r.last);
  vocab.Save(out / "vocab.tsv");
  WriteFile(out / "train_log.csv", FormatTrainLogCsv(r.log));
  *sum = {{"n_train", train.size()}, {"n_val", val.size()},
          {"best_checkpoint", r.best_checkpoint},
          {"best_val_loss", r.checkpoint_val_losses[r.best_checkpoint]},
          {"seeds", SeedSummary(cfg.seed)}};
  Progress("best checkpoint " + std::to_string(r.best_checkpoint) + ", val loss " +
           FormatDouble(r.checkpoint_val_losses[r.best_checkpoint]));
}

struct AnnotateArgs {
  std::string system = "annt", data, split = "test", model;
  std::optional<double> err_rate;
  std::optional<int> beam;
};

void CmdAnnotate(RunConfig cfg, const fs::path &out, const AnnotateArgs &a, Summary *sum) {
  const fs::path data = Normal(a.data);
  const auto inv = ReadInventory(data);
  const auto utts = ReadSplit(data, a.split, inv);
  LabelTable table;
  if (a.system == "annt") {
    if (a.model.empty()) throw CLI::ValidationError("--model", "required for --system annt");
    if (a.beam) {
      cfg.decode.beam = *a.beam;
      cfg.decode.mode = *a.beam > 1 ? SearchMode::kBeam : SearchMode::kGreedy;
    }
    cfg.Validate();
    const auto model = LoadCheckpoint(a.model);
    if (!(model.vocab() == Vocabulary::Build(inv)))
      throw Error(ErrorCode::kDimMismatch, "checkpoint vocabulary differs from the data's");
    const auto anns = AnnotateAll(model, utts, cfg.decode, cfg.jobs);
    std::size_t repaired = 0;
    for (std::size_t i = 0; i < utts.size(); ++i) {
      table.emplace_back(utts[i].id, anns[i].labels);
      repaired += anns[i].repaired ? 1 : 0;
    }
    *sum = {{"system", "annt"}, {"n", utts.size()}, {"repaired", repaired},
            {"beam", cfg.decode.mode == SearchMode::kBeam ? cfg.decode.beam : 1}};
    Progress(std::to_string(repaired) + " of " + std::to_string(utts.size()) +
             " outputs needed grammar repair");
  } else {
    const auto lex = ReadLexicon(data, inv);
    const double err = a.err_rate.value_or(cfg.asr_err_rate);
    const auto hyps = CascadeAll(utts, lex, cfg.policy, err, RunSeeds(cfg.seed).asr);
    for (std::size_t i = 0; i < utts.size(); ++i) table.emplace_back(utts[i].id, hyps[i]);
    *sum = {{"system", "cascade"}, {"n", utts.size()}, {"err_rate", err},
            {"asr_seed", RunSeeds(cfg.seed).asr}};
  }
  fs::create_directories(out);
  WriteLabelTable(out / "hyp.tsv", table);
  Progress("annotated " + std::to_string(table.size()) + " utterances");
}

struct EvaluateArgs {
  std::string data, split = "test";
  std::vector<std::string> hyps;
};

void CmdEvaluate(const RunConfig &cfg, const fs::path &out, const EvaluateArgs &a,
                 Summary *sum) {
  const fs::path data = Normal(a.data);
  const auto inv = ReadInventory(data);
  const auto utts = ReadSplit(data, a.split, inv);
  std::vector<ModelOutputs> models;
  for (const auto &spec : a.hyps) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("--hyp", "expected name=path, got '" + spec + "'");
    std::map<std::string, TtsLabelSequence> by_id;
    for (auto &[id, seq] : ReadLabelTable(spec.substr(eq + 1), inv)) by_id[id] = std::move(seq);
    ModelOutputs m{spec.substr(0, eq), {}};
    for (const auto &u : utts) {
      auto it = by_id.find(u.id);
      if (it == by_id.end())
        throw Error(ErrorCode::kRaggedInputs, m.name + " has no output for " + u.id);
      m.outputs.push_back(it->second);
    }
    if (by_id.size() != utts.size())
      throw Error(ErrorCode::kRaggedInputs, m.name + " has outputs for unknown ids");
    models.push_back(std::move(m));
  }
  const auto report = EvaluationProtocol(Labels(utts), models, cfg.excluded);
  fs::create_directories(out);
  const std::string text = FormatReportText(report);
  WriteFile(out / "report.txt", text);
  WriteFile(out / "report.csv", FormatReportCsv(report));
  std::cout << text;
  *sum = {{"n_total", report.n_total},
          {"n_phoneme_exact_all_models", report.n_phoneme_exact_all_models},
          {"ranking", RankSystems(report)}};
}

struct AugmentArgs {
  std::string labeled, text, lexicon, inventory;
};

void CmdAugment(const RunConfig &cfg, const fs::path &out, const AugmentArgs &a, Summary *sum) {
  const fs::path labeled = Normal(a.labeled);
  const fs::path root = labeled.parent_path();
  const auto inv = MoraInventory::Load(a.inventory.empty() ? root / "inventory.txt"
                                                           : fs::path(a.inventory));
  const auto lex =
      Lexicon::Load(a.lexicon.empty() ? root / "lexicon.tsv" : fs::path(a.lexicon), inv);
  const auto d = ReadCorpus(labeled, inv);
  const auto text = ReadTextPool(a.text);
  AugmentConfig ac = cfg.augment;
  ac.policy = cfg.policy;
  const auto r = RunAugmentation(d, text, lex, ac, RunSeeds(cfg.seed).augment, cfg.jobs);
  fs::create_directories(out);
  SaveSpeaker(out / "speaker.cfg", r.speaker);
  WriteCorpus(out / "corpus", r.augmented);
  *sum = {{"k", d.size()}, {"k_prime", r.augmented.size()},
          {"policy", cfg.ToKeyValue().GetString("cascade.policy", "")},
          {"augment_seed", RunSeeds(cfg.seed).augment},
          {"fitted", {{"pitch_base", r.speaker.pitch_base}, {"rise_delta", r.speaker.rise_delta},
                      {"fall_delta", r.speaker.fall_delta}, {"tempo_min", r.speaker.tempo_min},
                      {"tempo_max", r.speaker.tempo_max}, {"noise_sigma", r.speaker.noise_sigma}}}};
  Progress("fitted synthesizer on " + std::to_string(d.size()) + " pairs; synthesized " +
           std::to_string(r.augmented.size()) + " utterances");
}

void CmdExperiment(const RunConfig &cfg, const fs::path &out, const std::string &which,
                   Summary *sum) {
  const World w = GenerateWorld(cfg, Progress);
  fs::create_directories(out);
  std::string text;
  if (which == "homograph") {
    const auto e = RunHomographExperiment(cfg, w, Progress);
    text = FormatHomographExperiment(e);
    WriteFile(out / "report.csv", FormatReportCsv(e.report));
    WriteFile(out / "train_log.csv", FormatTrainLogCsv(e.training.log));
    *sum = {{"ranking", e.ranking}, {"seeds", SeedSummary(cfg.seed)}};
  } else {
    const auto e = RunAugmentExperiment(cfg, w, Progress);
    text = FormatAugmentExperiment(e);
    WriteFile(out / "report.csv", FormatReportCsv(e.report));
    WriteFile(out / "train_log_base.csv", FormatTrainLogCsv(e.base_training.log));
    WriteFile(out / "train_log_augmented.csv", FormatTrainLogCsv(e.augmented_training.log));
    *sum = {{"k", e.k}, {"k_prime", e.k_prime}, {"n_merged", e.n_merged},
            {"relative_cer_reduction", e.relative_cer_reduction},
            {"ranking", RankSystems(e.report)}, {"seeds", SeedSummary(cfg.seed)}};
  }
  WriteFile(out / "report.txt", text);
  std::cout << text;
}

}  // namespace

int RunCli(int argc, const char *const *argv) {
  CLI::App app{"Audio-conditioned phonemic and prosodic label annotation"};
  app.fallthrough();
  app.require_subcommand(1);
  GlobalFlags g;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string excluded;
  auto *o_seed = app.add_option("--seed", seed, "Master random seed");
  auto *o_jobs = app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 1024));
  auto *o_excl = app.add_option("--excluded-labels", excluded,
                                "Comma-separated prosody labels left out of F1 (default _,?)");
  app.add_option("--config", g.config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "Output directory")->required();

  auto *gen = app.add_subcommand("gen", "Generate the synthetic world");

  TrainArgs ta;
  auto *train = app.add_subcommand("train", "Train the annotator");
  train->add_option("--data", ta.data, "World directory")->required();
  train->add_option("--split", ta.split, "Training split");
  train->add_option("--val-split", ta.val_split, "Validation split");
  train->add_option("--extra", ta.extra, "Additional corpus directories to train on");

  AnnotateArgs aa;
  std::string beam_str, err_str;
  auto *annotate = app.add_subcommand("annotate", "Label a split with a system");
  annotate->add_option("--system", aa.system, "annt or cascade")
      ->check(CLI::IsMember({"annt", "cascade"}));
  annotate->add_option("--data", aa.data, "World directory")->required();
  annotate->add_option("--split", aa.split, "Split to label");
  annotate->add_option("--model", aa.model, "Annotator checkpoint");
  double err_rate = 0.0;
  int beam = 1;
  auto *o_err = annotate->add_option("--err-rate", err_rate, "Cascade word error rate")
                    ->check(CLI::Range(0.0, 1.0));
  auto *o_beam = annotate->add_option("--beam", beam, "Beam width; 1 is greedy")
                     ->check(CLI::Range(1, 1024));

  EvaluateArgs ea;
  auto *evaluate = app.add_subcommand("evaluate", "Score hypotheses against a split");
  evaluate->add_option("--data", ea.data, "World directory")->required();
  evaluate->add_option("--split", ea.split, "Reference split");
  evaluate->add_option("--hyp", ea.hyps, "name=path of a hypothesis table")->required();

  AugmentArgs ga;
  auto *augment = app.add_subcommand("augment", "Pseudo-label text and synthesize pairs");
  augment->add_option("--labeled", ga.labeled, "Labeled corpus directory")->required();
  augment->add_option("--text", ga.text, "Text-only sentences")->required();
  augment->add_option("--lexicon", ga.lexicon, "Lexicon (default: beside the corpus)");
  augment->add_option("--inventory", ga.inventory, "Mora inventory (default: beside the corpus)");

  auto *experiment = app.add_subcommand("experiment", "Run an end-to-end experiment");
  experiment->require_subcommand(1);
  auto *exp_h = experiment->add_subcommand("homograph", "Annotator versus text cascades");
  auto *exp_a = experiment->add_subcommand("augment", "Base versus augmented training");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (*o_seed) g.seed = seed;
  if (*o_jobs) g.jobs = jobs;
  if (*o_excl) g.excluded = excluded;
  if (*o_err) aa.err_rate = err_rate;
  if (*o_beam) aa.beam = beam;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const RunConfig cfg = ResolveConfig(g);
    const fs::path out(g.out);
    fs::create_directories(out);
    std::string command;
    Summary summary = Summary::object();
    if (*gen) {
      command = "gen";
      CmdGen(cfg, out, &summary);
    } else if (*train) {
      command = "train";
      CmdTrain(cfg, out, ta, &summary);
    } else if (*annotate) {
      command = "annotate";
      CmdAnnotate(cfg, out, aa, &summary);
    } else if (*evaluate) {
      command = "evaluate";
      CmdEvaluate(cfg, out, ea, &summary);
    } else if (*augment) {
      command = "augment";
      CmdAugment(cfg, out, ga, &summary);
    } else {
      command = *exp_h ? "experiment homograph" : "experiment augment";
      CmdExperiment(cfg, out, *exp_h ? "homograph" : "augment", &summary);
    }
    (void)exp_a;
    WriteFile(out / "config.cfg", cfg.ToKeyValue().ToString());
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    WriteManifest(out, command, cfg, summary, secs);
    return 0;
  } catch (const CLI::ValidationError &e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 10 + static_cast<int>(e.code());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}

int RunCli(const std::vector<std::string> &args) {
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  return RunCli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace ttslabel
