// src/metrics.cc

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

#include "ttslabel/metrics.h"

#include <cstdio>
#include <sstream>

#include "ttslabel/error.h"

namespace ttslabel {

namespace {

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

double Cer(const PhonemeSeq &ref, const PhonemeSeq &hyp) {
  if (ref.empty()) throw Error(ErrorCode::kEmptyReference, "empty reference");
  return static_cast<double>(Levenshtein(ref, hyp)) /
         static_cast<double>(ref.size());
}

void AccumulateProsody(const ProsodySeq &ref, const ProsodySeq &hyp,
                       const ProsodySet &excluded, ProsodyScore *score) {
  if (ref.size() != hyp.size())
    throw Error(ErrorCode::kLengthMismatch,
                "prosody streams of length " + std::to_string(ref.size()) +
                    " and " + std::to_string(hyp.size()));
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const Prosody r = ref[i], h = hyp[i];
    if (excluded.Contains(r) || excluded.Contains(h)) continue;
    const bool r_on = r != Prosody::kPad;
    const bool h_on = h != Prosody::kPad;
    if (r_on && h_on && r == h) {
      ++score->tp;
      continue;
    }
    if (h_on) ++score->fp;
    if (r_on) ++score->fn;
  }
}

void FinalizeProsody(ProsodyScore *s) {
  const double tp = static_cast<double>(s->tp);
  if (s->tp + s->fp + s->fn == 0) {
    s->precision = s->recall = s->f1 = 1.0;
    return;
  }
  s->precision = s->tp + s->fp > 0 ? tp / static_cast<double>(s->tp + s->fp) : 0.0;
  s->recall = s->tp + s->fn > 0 ? tp / static_cast<double>(s->tp + s->fn) : 0.0;
  const double sum = s->precision + s->recall;
  s->f1 = sum > 0 ? 2.0 * s->precision * s->recall / sum : 0.0;
}

ProsodyScore ProsodyF1(std::span<const std::pair<ProsodySeq, ProsodySeq>> pairs,
                       const ProsodySet &excluded) {
  ProsodyScore score;
  for (const auto &[ref, hyp] : pairs) AccumulateProsody(ref, hyp, excluded, &score);
  FinalizeProsody(&score);
  return score;
}

EvalReport EvaluationProtocol(const std::vector<TtsLabelSequence> &refs,
                              const std::vector<ModelOutputs> &models,
                              const ProsodySet &excluded) {
  for (const auto &m : models) {
    if (m.outputs.size() != refs.size())
      throw Error(ErrorCode::kRaggedInputs,
                  "model '" + m.name + "' has " + std::to_string(m.outputs.size()) +
                      " outputs for " + std::to_string(refs.size()) + " references");
  }
  EvalReport report;
  report.n_total = refs.size();
  report.excluded = excluded;

  std::vector<std::pair<PhonemeSeq, ProsodySeq>> ref_streams;
  ref_streams.reserve(refs.size());
  for (const auto &r : refs) {
    if (r.empty()) throw Error(ErrorCode::kEmptyReference, "empty reference");
    ref_streams.push_back(SplitStreams(r));
  }

  std::vector<char> all_exact(refs.size(), 1);
  std::vector<std::vector<std::pair<PhonemeSeq, ProsodySeq>>> hyp_streams;
  for (const auto &m : models) {
    ModelEval eval;
    eval.name = m.name;
    double cer_sum = 0.0;
    auto &streams = hyp_streams.emplace_back();
    streams.reserve(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) {
      streams.push_back(SplitStreams(m.outputs[i]));
      const auto &ref_ph = ref_streams[i].first;
      const std::size_t edits = Levenshtein(ref_ph, streams.back().first);
      eval.edits += edits;
      eval.ref_moras += ref_ph.size();
      cer_sum += static_cast<double>(edits) / static_cast<double>(ref_ph.size());
      if (edits == 0) {
        ++eval.n_phoneme_exact;
      } else {
        all_exact[i] = 0;
      }
    }
    if (eval.ref_moras > 0)
      eval.cer = static_cast<double>(eval.edits) / static_cast<double>(eval.ref_moras);
    if (!refs.empty()) eval.cer_utt_mean = cer_sum / static_cast<double>(refs.size());
    report.models.push_back(std::move(eval));
  }

  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (all_exact[i]) report.subset.push_back(i);
  }
  report.n_phoneme_exact_all_models = report.subset.size();

  for (std::size_t k = 0; k < models.size(); ++k) {
    ProsodyScore &score = report.models[k].prosody;
    for (std::size_t i : report.subset)
      AccumulateProsody(ref_streams[i].second, hyp_streams[k][i].second, excluded,
                        &score);
    FinalizeProsody(&score);
  }
  return report;
}

std::string FormatReportText(const EvalReport &report) {
  std::ostringstream out;
  out << "n_total = " << report.n_total << '\n';
  out << "n_phoneme_exact_all_models = " << report.n_phoneme_exact_all_models << '\n';
  out << "excluded_labels = " << report.excluded.ToString() << '\n';
  out << "prosody_averaging = micro, background = *\n";
  out << "cer_averaging = micro\n";
  for (const auto &m : report.models) {
    const std::string p = m.name + ".";
    out << p << "cer = " << Fmt(m.cer) << '\n';
    out << p << "cer_utt_mean = " << Fmt(m.cer_utt_mean) << '\n';
    out << p << "edits = " << m.edits << '\n';
    out << p << "ref_moras = " << m.ref_moras << '\n';
    out << p << "n_phoneme_exact = " << m.n_phoneme_exact << '\n';
    out << p << "prosody_tp = " << m.prosody.tp << '\n';
    out << p << "prosody_fp = " << m.prosody.fp << '\n';
    out << p << "prosody_fn = " << m.prosody.fn << '\n';
    out << p << "prosody_precision = " << Fmt(m.prosody.precision) << '\n';
    out << p << "prosody_recall = " << Fmt(m.prosody.recall) << '\n';
    out << p << "prosody_f1 = " << Fmt(m.prosody.f1) << '\n';
  }
  return out.str();
}

std::string FormatReportCsv(const EvalReport &report) {
  std::ostringstream out;
  out << "model,cer,cer_utt_mean,edits,ref_moras,n_phoneme_exact,n_subset,"
         "prosody_tp,prosody_fp,prosody_fn,prosody_precision,prosody_recall,"
         "prosody_f1\n";
  for (const auto &m : report.models) {
    out << m.name << ',' << Fmt(m.cer) << ',' << Fmt(m.cer_utt_mean) << ','
        << m.edits << ',' << m.ref_moras << ',' << m.n_phoneme_exact << ','
        << report.n_phoneme_exact_all_models << ',' << m.prosody.tp << ','
        << m.prosody.fp << ',' << m.prosody.fn << ',' << Fmt(m.prosody.precision)
        << ',' << Fmt(m.prosody.recall) << ',' << Fmt(m.prosody.f1) << '\n';
  }
  return out.str();
}

}  // namespace ttslabel
