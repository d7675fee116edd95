// src/decode.cc

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

#include <algorithm>
#include <cmath>
#include <limits>

#include "nn_ops.h"
#include "ttslabel/error.h"

namespace ttslabel {

using nn::ConstRowMap;
using nn::Mat;
using nn::RowVec;

template <typename Real>
IncrementalDecoder<Real>::IncrementalDecoder(const AnnotatorModel<Real> &model,
                                             const AcousticFeatures &x)
    : model_(model), n_frames_(x.n_frames) {
  const std::vector<Real> enc = Encode(model, x);
  const int d = model.config().d_model;
  nn::ConstMatMap<Real> memory(enc.data(), x.n_frames, d);
  const Real *p = model.params().data();
  for (const auto &s : model.layout().decoder) {
    Mat<Real> k = nn::LinearForward<Real>(memory, p, s.cross_attn.k);
    Mat<Real> v = nn::LinearForward<Real>(memory, p, s.cross_attn.v);
    cross_keys_.emplace_back(k.data(), k.data() + k.size());
    cross_values_.emplace_back(v.data(), v.data() + v.size());
  }
}

template <typename Real>
typename IncrementalDecoder<Real>::State IncrementalDecoder<Real>::Start() const {
  State s;
  s.keys.resize(model_.layout().decoder.size());
  s.values.resize(model_.layout().decoder.size());
  return s;
}

namespace {

// Single-query attention over `n` cached rows.
template <typename Real>
RowVec<Real> AttendOne(const RowVec<Real> &q, const Real *keys, const Real *values,
                       int n, int d, int heads) {
  const int dh = d / heads;
  const Real scale = Real(1) / std::sqrt(static_cast<Real>(dh));
  RowVec<Real> ctx = RowVec<Real>::Zero(d);
  std::vector<Real> w(static_cast<std::size_t>(n));
  for (int h = 0; h < heads; ++h) {
    Real mx = -std::numeric_limits<Real>::infinity();
    for (int j = 0; j < n; ++j) {
      Real dot = 0;
      const Real *kr = keys + static_cast<std::size_t>(j) * d + h * dh;
      for (int c = 0; c < dh; ++c) dot += q[h * dh + c] * kr[c];
      w[static_cast<std::size_t>(j)] = dot * scale;
      mx = std::max(mx, w[static_cast<std::size_t>(j)]);
    }
    Real sum = 0;
    for (auto &v : w) {
      v = std::exp(v - mx);
      sum += v;
    }
    for (int j = 0; j < n; ++j) {
      const Real a = w[static_cast<std::size_t>(j)] / sum;
      const Real *vr = values + static_cast<std::size_t>(j) * d + h * dh;
      for (int c = 0; c < dh; ++c) ctx[h * dh + c] += a * vr[c];
    }
  }
  return ctx;
}

template <typename Real>
Mat<Real> AsRow(const RowVec<Real> &v) {
  return Mat<Real>(v);
}

}  // namespace

template <typename Real>
std::vector<Real> IncrementalDecoder<Real>::Step(State *state, int token) const {
  const auto &cfg = model_.config();
  const auto &lay = model_.layout();
  const Real *p = model_.params().data();
  const int d = cfg.d_model;
  const int vocab = model_.vocab().size();
  if (token < 0 || token >= vocab) throw Error(ErrorCode::kUnknownId, std::to_string(token));
  if (state->length >= cfg.max_tgt_len)
    throw Error(ErrorCode::kSequenceTooLong, "decoder ran past max_tgt_len");

  Mat<Real> x = AsRow<Real>(
      ConstRowMap<Real>(p + lay.embedding + static_cast<std::size_t>(token) * d, d));
  nn::AddPositional(x.row(0).data(), d, state->length);
  for (std::size_t l = 0; l < lay.decoder.size(); ++l) {
    const auto &s = lay.decoder[l];
    Mat<Real> n1 = nn::LayerNormForward<Real>(x, p, s.norm1, nullptr);
    Mat<Real> q = nn::LinearForward<Real>(n1, p, s.self_attn.q);
    Mat<Real> k = nn::LinearForward<Real>(n1, p, s.self_attn.k);
    Mat<Real> v = nn::LinearForward<Real>(n1, p, s.self_attn.v);
    auto &keys = state->keys[l];
    auto &values = state->values[l];
    keys.insert(keys.end(), k.data(), k.data() + d);
    values.insert(values.end(), v.data(), v.data() + d);
    RowVec<Real> ctx = AttendOne<Real>(q.row(0), keys.data(), values.data(),
                                       state->length + 1, d, cfg.n_heads);
    x += nn::LinearForward<Real>(AsRow<Real>(ctx), p, s.self_attn.o);

    Mat<Real> n2 = nn::LayerNormForward<Real>(x, p, s.norm2, nullptr);
    Mat<Real> cq = nn::LinearForward<Real>(n2, p, s.cross_attn.q);
    RowVec<Real> cctx = AttendOne<Real>(cq.row(0), cross_keys_[l].data(),
                                        cross_values_[l].data(), n_frames_, d,
                                        cfg.n_heads);
    x += nn::LinearForward<Real>(AsRow<Real>(cctx), p, s.cross_attn.o);

    Mat<Real> n3 = nn::LayerNormForward<Real>(x, p, s.norm3, nullptr);
    x += nn::FeedForwardForward<Real>(n3, p, s.ff, nullptr);
  }
  Mat<Real> f = nn::LayerNormForward<Real>(x, p, lay.decoder_norm, nullptr);
  Mat<Real> logits = nn::LinearForward<Real>(f, p, lay.output);
  nn::LogSoftmaxRow(logits.data(), vocab);
  ++state->length;
  return std::vector<Real>(logits.data(), logits.data() + vocab);
}

namespace {

template <typename Real>
int ResolveMaxLen(const AnnotatorModel<Real> &model, int max_len) {
  const int cap = model.config().max_tgt_len - 1;
  return max_len <= 0 ? cap : std::min(max_len, cap);
}

}  // namespace

template <typename Real>
Hypothesis GreedySearch(const AnnotatorModel<Real> &model, const AcousticFeatures &x,
                        int max_len) {
  max_len = ResolveMaxLen(model, max_len);
  IncrementalDecoder<Real> dec(model, x);
  auto state = dec.Start();
  const int eos = model.vocab().eos();
  Hypothesis hyp;
  hyp.ids.push_back(model.vocab().bos());
  for (int step = 0; step < max_len; ++step) {
    const auto logp = dec.Step(&state, hyp.ids.back());
    const int best = static_cast<int>(std::max_element(logp.begin(), logp.end()) -
                                      logp.begin());
    hyp.score += static_cast<double>(logp[static_cast<std::size_t>(best)]);
    hyp.ids.push_back(best);
    if (best == eos) {
      hyp.finished = true;
      break;
    }
  }
  return hyp;
}

template <typename Real>
Hypothesis BeamSearch(const AnnotatorModel<Real> &model, const AcousticFeatures &x,
                      int beam, int max_len, bool length_norm) {
  if (beam < 1) throw Error(ErrorCode::kInvalidConfig, "beam width must be >= 1");
  max_len = ResolveMaxLen(model, max_len);
  IncrementalDecoder<Real> dec(model, x);
  using State = typename IncrementalDecoder<Real>::State;
  struct Entry {
    Hypothesis hyp;
    State state;
  };
  const int eos = model.vocab().eos();
  const int vocab = model.vocab().size();
  auto ranked = [length_norm](const Hypothesis &h) {
    if (!length_norm) return h.score;
    return h.score / static_cast<double>(std::max<std::size_t>(1, h.ids.size() - 1));
  };

  std::vector<Entry> live(1);
  live[0].hyp.ids.push_back(model.vocab().bos());
  live[0].state = dec.Start();
  std::vector<Hypothesis> finished;

  for (int step = 0; step < max_len && !live.empty(); ++step) {
    struct Candidate {
      double score;
      std::size_t parent;
      int token;
    };
    std::vector<Candidate> cands;
    cands.reserve(live.size() * static_cast<std::size_t>(vocab));
    std::vector<std::vector<Real>> dists(live.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
      dists[i] = dec.Step(&live[i].state, live[i].hyp.ids.back());
      for (int tok = 0; tok < vocab; ++tok)
        cands.push_back({live[i].hyp.score +
                             static_cast<double>(dists[i][static_cast<std::size_t>(tok)]),
                         i, tok});
    }
    // Stable order on ties: parent index, then token id.
    const std::size_t keep = std::min(cands.size(), static_cast<std::size_t>(beam));
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep),
                      cands.end(), [](const Candidate &a, const Candidate &b) {
                        if (a.score != b.score) return a.score > b.score;
                        if (a.parent != b.parent) return a.parent < b.parent;
                        return a.token < b.token;
                      });
    std::vector<Entry> next;
    next.reserve(keep);
    for (std::size_t c = 0; c < keep; ++c) {
      const auto &cand = cands[c];
      Hypothesis h = live[cand.parent].hyp;
      h.ids.push_back(cand.token);
      h.score = cand.score;
      if (cand.token == eos) {
        h.finished = true;
        finished.push_back(std::move(h));
      } else {
        next.push_back({std::move(h), live[cand.parent].state});
      }
    }
    live = std::move(next);
  }
  // Hypotheses cut at max_len compete with the finished ones.
  for (auto &e : live) finished.push_back(std::move(e.hyp));
  return *std::max_element(finished.begin(), finished.end(),
                           [&ranked](const Hypothesis &a, const Hypothesis &b) {
                             return ranked(a) < ranked(b);
                           });
}

RepairResult RepairTokens(std::span<const int> ids, const Vocabulary &vocab) {
  RepairResult out;
  std::size_t start = 0;
  if (!ids.empty() && ids[0] == vocab.bos()) start = 1;
  bool expect_mora = true;
  bool saw_eos = false;
  for (std::size_t i = start; i < ids.size(); ++i) {
    const int id = ids[i];
    if (id == vocab.eos()) {
      saw_eos = true;
      break;
    }
    if (id < 0 || id >= vocab.size() || vocab.IsControl(id)) {
      out.repaired = true;
      continue;
    }
    if (vocab.IsMora(id)) {
      if (!expect_mora) {
        out.labels.items.back().prosody = Prosody::kPad;
        out.repaired = true;
      }
      out.labels.items.push_back({vocab.Token(id), Prosody::kPad});
      expect_mora = false;
    } else {
      if (expect_mora) {
        out.repaired = true;  // prosody label without a mora
        continue;
      }
      out.labels.items.back().prosody = vocab.ProsodyOf(id);
      expect_mora = true;
    }
  }
  if (!expect_mora) {
    out.labels.items.pop_back();
    out.repaired = true;
  }
  if (!saw_eos || out.labels.empty()) out.repaired = true;
  return out;
}

template <typename Real>
Annotation Annotate(const AnnotatorModel<Real> &model, const AcousticFeatures &x,
                    const DecodeOptions &options) {
  Annotation a;
  if (options.mode == SearchMode::kGreedy) {
    a.raw = GreedySearch(model, x, options.max_len);
  } else {
    a.raw = BeamSearch(model, x, options.beam, options.max_len, options.length_norm);
  }
  RepairResult r = RepairTokens(a.raw.ids, model.vocab());
  a.labels = std::move(r.labels);
  a.repaired = r.repaired;
  return a;
}

template class IncrementalDecoder<float>;
template class IncrementalDecoder<double>;
template Hypothesis GreedySearch(const AnnotatorModel<float> &, const AcousticFeatures &, int);
template Hypothesis GreedySearch(const AnnotatorModel<double> &, const AcousticFeatures &, int);
template Hypothesis BeamSearch(const AnnotatorModel<float> &, const AcousticFeatures &, int,
                               int, bool);
template Hypothesis BeamSearch(const AnnotatorModel<double> &, const AcousticFeatures &,
                               int, int, bool);
template Annotation Annotate(const AnnotatorModel<float> &, const AcousticFeatures &,
                             const DecodeOptions &);
template Annotation Annotate(const AnnotatorModel<double> &, const AcousticFeatures &,
                             const DecodeOptions &);

}  // namespace ttslabel
