// src/model.cc

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

#include "ttslabel/model.h"

#include <cstring>
#include <fstream>

#include "nn_ops.h"
#include "ttslabel/binary_io.h"
#include "ttslabel/error.h"
#include "ttslabel/rng.h"

namespace ttslabel {

using nn::Mat;

void ModelConfig::Validate() const {
  auto fail = [](const std::string &msg) { throw Error(ErrorCode::kInvalidConfig, msg); };
  if (input_dim <= 0) fail("input_dim must be positive");
  if (context < 0) fail("context must be non-negative");
  if (d_model <= 0 || n_heads <= 0) fail("d_model and n_heads must be positive");
  if (d_model % n_heads != 0)
    fail("d_model " + std::to_string(d_model) + " is not divisible by n_heads " +
         std::to_string(n_heads));
  if (d_model % 2 != 0) fail("d_model must be even for the position code");
  if (n_enc_layers < 0 || n_dec_layers < 0) fail("layer counts must be non-negative");
  if (ff_dim <= 0) fail("ff_dim must be positive");
  if (max_src_len <= 0 || max_tgt_len < 2) fail("bad maximum lengths");
}

namespace {

class LayoutBuilder {
 public:
  explicit LayoutBuilder(ParamLayout *layout) : layout_(layout) {}

  std::size_t Tensor(const std::string &name, int rows, int cols) {
    TensorInfo info{name, layout_->total, rows, cols};
    layout_->total += info.size();
    layout_->tensors.push_back(info);
    return info.offset;
  }
  LinearSlot Linear(const std::string &name, int in, int out) {
    LinearSlot s;
    s.in = in;
    s.out = out;
    s.w = Tensor(name + ".weight", in, out);
    s.b = Tensor(name + ".bias", 1, out);
    return s;
  }
  NormSlot Norm(const std::string &name, int dim) {
    NormSlot s;
    s.dim = dim;
    s.gain = Tensor(name + ".gain", 1, dim);
    s.bias = Tensor(name + ".bias", 1, dim);
    return s;
  }
  AttentionSlot Attention(const std::string &name, int d) {
    return {Linear(name + ".q", d, d), Linear(name + ".k", d, d),
            Linear(name + ".v", d, d), Linear(name + ".o", d, d)};
  }
  FeedForwardSlot FeedForward(const std::string &name, int d, int ff) {
    return {Linear(name + ".up", d, ff), Linear(name + ".down", ff, d)};
  }

 private:
  ParamLayout *layout_;
};

}  // namespace

ParamLayout ParamLayout::Build(const ModelConfig &cfg, int vocab_size) {
  cfg.Validate();
  ParamLayout layout;
  LayoutBuilder b(&layout);
  const int d = cfg.d_model;
  layout.input = b.Linear("enc.input", cfg.input_dim * (2 * cfg.context + 1), d);
  for (int l = 0; l < cfg.n_enc_layers; ++l) {
    const std::string p = "enc.layer" + std::to_string(l);
    EncoderLayerSlot s;
    s.norm1 = b.Norm(p + ".norm1", d);
    s.self_attn = b.Attention(p + ".self_attn", d);
    s.norm2 = b.Norm(p + ".norm2", d);
    s.ff = b.FeedForward(p + ".ff", d, cfg.ff_dim);
    layout.encoder.push_back(s);
  }
  layout.encoder_norm = b.Norm("enc.norm", d);
  layout.encoder_size = layout.total;
  layout.embedding = b.Tensor("dec.embedding", vocab_size, d);
  for (int l = 0; l < cfg.n_dec_layers; ++l) {
    const std::string p = "dec.layer" + std::to_string(l);
    DecoderLayerSlot s;
    s.norm1 = b.Norm(p + ".norm1", d);
    s.self_attn = b.Attention(p + ".self_attn", d);
    s.norm2 = b.Norm(p + ".norm2", d);
    s.cross_attn = b.Attention(p + ".cross_attn", d);
    s.norm3 = b.Norm(p + ".norm3", d);
    s.ff = b.FeedForward(p + ".ff", d, cfg.ff_dim);
    layout.decoder.push_back(s);
  }
  layout.decoder_norm = b.Norm("dec.norm", d);
  layout.output = b.Linear("dec.output", d, vocab_size);
  return layout;
}

std::size_t ParameterCount(const ModelConfig &cfg, int vocab_size) {
  const std::size_t d = static_cast<std::size_t>(cfg.d_model);
  const std::size_t ff = static_cast<std::size_t>(cfg.ff_dim);
  const std::size_t v = static_cast<std::size_t>(vocab_size);
  const std::size_t in = static_cast<std::size_t>(cfg.input_dim) * (2 * cfg.context + 1);
  const std::size_t norm = 2 * d;
  const std::size_t attn = 4 * (d * d + d);
  const std::size_t ffn = d * ff + ff + ff * d + d;
  const std::size_t enc = in * d + d + cfg.n_enc_layers * (2 * norm + attn + ffn) + norm;
  const std::size_t dec = v * d + cfg.n_dec_layers * (3 * norm + 2 * attn + ffn) + norm +
                          d * v + v;
  return enc + dec;
}

template <typename Real>
AnnotatorModel<Real>::AnnotatorModel(const ModelConfig &cfg, const Vocabulary &vocab)
    : cfg_(cfg), vocab_(vocab), layout_(ParamLayout::Build(cfg, vocab.size())) {
  params_.assign(layout_.total, Real(0));
}

template <typename Real>
AnnotatorModel<Real> AnnotatorModel<Real>::Init(const ModelConfig &cfg,
                                                const Vocabulary &vocab,
                                                std::uint64_t seed) {
  AnnotatorModel model(cfg, vocab);
  Rng rng(DeriveSeed(seed, 0x1a17));
  for (const TensorInfo &t : model.layout_.tensors) {
    Real *p = model.params_.data() + t.offset;
    const auto &name = t.name;
    auto ends_with = [&name](const char *suffix) {
      const std::size_t n = std::strlen(suffix);
      return name.size() >= n && name.compare(name.size() - n, n, suffix) == 0;
    };
    if (ends_with(".gain")) {
      std::fill(p, p + t.size(), Real(1));
    } else if (ends_with(".bias")) {
      std::fill(p, p + t.size(), Real(0));
    } else if (name == "dec.embedding") {
      for (std::size_t i = 0; i < t.size(); ++i) p[i] = static_cast<Real>(rng.Normal());
    } else {
      const double a = std::sqrt(6.0 / (t.rows + t.cols));
      for (std::size_t i = 0; i < t.size(); ++i)
        p[i] = static_cast<Real>(rng.Uniform(-a, a));
    }
  }
  return model;
}

namespace {

template <typename T>
struct EncLayerCache {
  nn::NormCache<T> n1, n2;
  nn::AttnCache<T> attn;
  nn::FfCache<T> ff;
};

template <typename T>
struct DecLayerCache {
  nn::NormCache<T> n1, n2, n3;
  nn::AttnCache<T> self_attn, cross_attn;
  nn::FfCache<T> ff;
};

template <typename T>
struct Tape {
  Mat<T> spliced;
  std::vector<EncLayerCache<T>> enc;
  nn::NormCache<T> enc_norm;
  Mat<T> memory;  // encoder output
  std::vector<DecLayerCache<T>> dec;
  nn::NormCache<T> dec_norm;
  Mat<T> dec_final;
  Mat<T> logp;
};

template <typename T>
void CheckInputs(const AnnotatorModel<T> &model, const AcousticFeatures &x) {
  const auto &cfg = model.config();
  if (x.dim != cfg.input_dim)
    throw Error(ErrorCode::kDimMismatch, "feature dim " + std::to_string(x.dim) +
                                             " != model input_dim " +
                                             std::to_string(cfg.input_dim));
  if (x.n_frames < 1) throw Error(ErrorCode::kEmptySequence, "no frames");
  if (x.n_frames > cfg.max_src_len)
    throw Error(ErrorCode::kSequenceTooLong,
                std::to_string(x.n_frames) + " frames > max_src_len " +
                    std::to_string(cfg.max_src_len));
}

template <typename T>
Mat<T> EncoderForward(const AnnotatorModel<T> &model, const AcousticFeatures &x,
                      Tape<T> *tape) {
  CheckInputs(model, x);
  const auto &cfg = model.config();
  const auto &lay = model.layout();
  const T *p = model.params().data();
  Mat<T> spliced = nn::SpliceFrames<T>(x, cfg.context);
  Mat<T> h = nn::LinearForward(spliced, p, lay.input);
  nn::AddPositional(&h, 0);
  if (tape != nullptr) {
    tape->spliced = std::move(spliced);
    tape->enc.resize(lay.encoder.size());
  }
  for (std::size_t l = 0; l < lay.encoder.size(); ++l) {
    const auto &s = lay.encoder[l];
    EncLayerCache<T> *c = tape != nullptr ? &tape->enc[l] : nullptr;
    Mat<T> n1 = nn::LayerNormForward(h, p, s.norm1, c ? &c->n1 : nullptr);
    h += nn::AttentionForward(n1, n1, false, cfg.n_heads, p, s.self_attn,
                              c ? &c->attn : nullptr);
    Mat<T> n2 = nn::LayerNormForward(h, p, s.norm2, c ? &c->n2 : nullptr);
    h += nn::FeedForwardForward(n2, p, s.ff, c ? &c->ff : nullptr);
  }
  return nn::LayerNormForward(h, p, lay.encoder_norm, tape ? &tape->enc_norm : nullptr);
}

// Returns log-probabilities [T-1, V] for the targets ids[1..].
template <typename T>
Mat<T> DecoderForward(const AnnotatorModel<T> &model, const Mat<T> &memory,
                      std::span<const int> ids, Tape<T> *tape) {
  const auto &cfg = model.config();
  const auto &lay = model.layout();
  const T *p = model.params().data();
  const int d = cfg.d_model;
  const int steps = static_cast<int>(ids.size()) - 1;
  const int vocab = model.vocab().size();
  Mat<T> x(steps, d);
  for (int t = 0; t < steps; ++t) {
    const int id = ids[static_cast<std::size_t>(t)];
    if (id < 0 || id >= vocab) throw Error(ErrorCode::kUnknownId, std::to_string(id));
    x.row(t) = nn::ConstRowMap<T>(p + lay.embedding + static_cast<std::size_t>(id) * d, d);
  }
  nn::AddPositional(&x, 0);
  if (tape != nullptr) tape->dec.resize(lay.decoder.size());
  for (std::size_t l = 0; l < lay.decoder.size(); ++l) {
    const auto &s = lay.decoder[l];
    DecLayerCache<T> *c = tape != nullptr ? &tape->dec[l] : nullptr;
    Mat<T> n1 = nn::LayerNormForward(x, p, s.norm1, c ? &c->n1 : nullptr);
    x += nn::AttentionForward(n1, n1, true, cfg.n_heads, p, s.self_attn,
                              c ? &c->self_attn : nullptr);
    Mat<T> n2 = nn::LayerNormForward(x, p, s.norm2, c ? &c->n2 : nullptr);
    x += nn::AttentionForward(n2, memory, false, cfg.n_heads, p, s.cross_attn,
                              c ? &c->cross_attn : nullptr);
    Mat<T> n3 = nn::LayerNormForward(x, p, s.norm3, c ? &c->n3 : nullptr);
    x += nn::FeedForwardForward(n3, p, s.ff, c ? &c->ff : nullptr);
  }
  Mat<T> f = nn::LayerNormForward(x, p, lay.decoder_norm, tape ? &tape->dec_norm : nullptr);
  Mat<T> logp = nn::LinearForward(f, p, lay.output);
  for (int t = 0; t < steps; ++t) nn::LogSoftmaxRow(logp.row(t).data(), vocab);
  if (tape != nullptr) tape->dec_final = std::move(f);
  return logp;
}

template <typename T>
void CheckTargets(const AnnotatorModel<T> &model, std::span<const int> ids) {
  if (ids.size() < 2)
    throw Error(ErrorCode::kEmptySequence, "target needs at least two ids");
  if (static_cast<int>(ids.size()) > model.config().max_tgt_len)
    throw Error(ErrorCode::kSequenceTooLong,
                std::to_string(ids.size()) + " ids > max_tgt_len " +
                    std::to_string(model.config().max_tgt_len));
}

template <typename T>
void Backward(const AnnotatorModel<T> &model, const Tape<T> &tape,
              std::span<const int> ids, const Mat<T> &dlogits, T *g) {
  const auto &cfg = model.config();
  const auto &lay = model.layout();
  const T *p = model.params().data();
  const int d = cfg.d_model;
  const bool train_encoder = !cfg.freeze_encoder;

  Mat<T> df = nn::LinearBackward(tape.dec_final, dlogits, p, lay.output, g);
  Mat<T> dx = nn::LayerNormBackward(df, tape.dec_norm, p, lay.decoder_norm, g);
  Mat<T> dmemory = Mat<T>::Zero(tape.memory.rows(), tape.memory.cols());
  for (std::size_t li = lay.decoder.size(); li-- > 0;) {
    const auto &s = lay.decoder[li];
    const auto &c = tape.dec[li];
    Mat<T> dn3 = nn::FeedForwardBackward(dx, c.ff, p, s.ff, g);
    dx += nn::LayerNormBackward(dn3, c.n3, p, s.norm3, g);
    Mat<T> dn2, dmem;
    nn::AttentionBackward(dx, c.cross_attn, cfg.n_heads, p, s.cross_attn, g, &dn2,
                          train_encoder ? &dmem : nullptr);
    if (train_encoder) dmemory += dmem;
    dx += nn::LayerNormBackward(dn2, c.n2, p, s.norm2, g);
    Mat<T> dq, dkv;
    nn::AttentionBackward(dx, c.self_attn, cfg.n_heads, p, s.self_attn, g, &dq, &dkv);
    dq += dkv;
    dx += nn::LayerNormBackward(dq, c.n1, p, s.norm1, g);
  }
  for (Eigen::Index t = 0; t < dx.rows(); ++t) {
    const std::size_t id = static_cast<std::size_t>(ids[static_cast<std::size_t>(t)]);
    nn::RowMap<T>(g + lay.embedding + id * d, d) += dx.row(t);
  }
  if (!train_encoder) return;

  Mat<T> dh = nn::LayerNormBackward(dmemory, tape.enc_norm, p, lay.encoder_norm, g);
  for (std::size_t li = lay.encoder.size(); li-- > 0;) {
    const auto &s = lay.encoder[li];
    const auto &c = tape.enc[li];
    Mat<T> dn2 = nn::FeedForwardBackward(dh, c.ff, p, s.ff, g);
    dh += nn::LayerNormBackward(dn2, c.n2, p, s.norm2, g);
    Mat<T> dq, dkv;
    nn::AttentionBackward(dh, c.attn, cfg.n_heads, p, s.self_attn, g, &dq, &dkv);
    dq += dkv;
    dh += nn::LayerNormBackward(dq, c.n1, p, s.norm1, g);
  }
  nn::LinearBackward(tape.spliced, dh, p, lay.input, g, false);
}

}  // namespace

template <typename Real>
Real TeacherForcedLoss(const AnnotatorModel<Real> &model, const AcousticFeatures &x,
                       std::span<const int> ids, std::vector<Real> *grad,
                       std::span<const int> decoder_inputs) {
  CheckTargets(model, ids);
  if (decoder_inputs.empty()) decoder_inputs = ids;
  if (decoder_inputs.size() != ids.size())
    throw Error(ErrorCode::kLengthMismatch, "decoder inputs and targets differ in length");
  Tape<Real> tape;
  Tape<Real> *tp = grad != nullptr ? &tape : nullptr;
  tape.memory = EncoderForward(model, x, tp);
  Mat<Real> logp = DecoderForward(model, tape.memory, decoder_inputs, tp);
  const int steps = static_cast<int>(logp.rows());
  Real loss = 0;
  for (int t = 0; t < steps; ++t) loss -= logp(t, ids[static_cast<std::size_t>(t) + 1]);
  loss /= static_cast<Real>(steps);
  if (grad != nullptr) {
    if (grad->size() != model.params().size())
      throw Error(ErrorCode::kDimMismatch, "gradient buffer has wrong size");
    // d(mean NLL)/dlogits = (softmax - onehot) / steps
    Mat<Real> dlogits = logp.array().exp();
    for (int t = 0; t < steps; ++t) dlogits(t, ids[static_cast<std::size_t>(t) + 1]) -= 1;
    dlogits /= static_cast<Real>(steps);
    Backward(model, tape, decoder_inputs, dlogits, grad->data());
  }
  return loss;
}

template <typename Real>
std::vector<Real> TeacherForcedLogProbs(const AnnotatorModel<Real> &model,
                                        const AcousticFeatures &x,
                                        std::span<const int> ids) {
  CheckTargets(model, ids);
  Mat<Real> memory = EncoderForward<Real>(model, x, nullptr);
  Mat<Real> logp = DecoderForward<Real>(model, memory, ids, nullptr);
  std::vector<Real> out(static_cast<std::size_t>(logp.rows()));
  for (std::size_t t = 0; t < out.size(); ++t)
    out[t] = logp(static_cast<Eigen::Index>(t), ids[t + 1]);
  return out;
}

template <typename Real>
std::vector<Real> Encode(const AnnotatorModel<Real> &model, const AcousticFeatures &x) {
  Mat<Real> memory = EncoderForward<Real>(model, x, nullptr);
  return std::vector<Real>(memory.data(), memory.data() + memory.size());
}

template class AnnotatorModel<float>;
template class AnnotatorModel<double>;
template float TeacherForcedLoss(const AnnotatorModel<float> &, const AcousticFeatures &,
                                 std::span<const int>, std::vector<float> *,
                                 std::span<const int>);
template double TeacherForcedLoss(const AnnotatorModel<double> &, const AcousticFeatures &,
                                  std::span<const int>, std::vector<double> *,
                                  std::span<const int>);
template std::vector<float> TeacherForcedLogProbs(const AnnotatorModel<float> &,
                                                  const AcousticFeatures &,
                                                  std::span<const int>);
template std::vector<double> TeacherForcedLogProbs(const AnnotatorModel<double> &,
                                                   const AcousticFeatures &,
                                                   std::span<const int>);
template std::vector<float> Encode(const AnnotatorModel<float> &, const AcousticFeatures &);
template std::vector<double> Encode(const AnnotatorModel<double> &, const AcousticFeatures &);

std::uint64_t Checksum(std::span<const float> values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (float v : values) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 4; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::uint64_t EncoderChecksum(const AnnotatorModel<float> &model) {
  return Checksum(std::span<const float>(model.params()).first(model.layout().encoder_size));
}

std::uint64_t DecoderChecksum(const AnnotatorModel<float> &model) {
  return Checksum(
      std::span<const float>(model.params()).subspan(model.layout().encoder_size));
}

namespace {
constexpr char kMagic[4] = {'T', 'T', 'S', 'L'};
constexpr std::uint32_t kCheckpointVersion = 1;
}  // namespace

void SaveCheckpoint(const std::filesystem::path &path,
                    const AnnotatorModel<float> &model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  const auto &c = model.config();
  out.write(kMagic, 4);
  WriteU32(out, kCheckpointVersion);
  for (int v : {c.input_dim, c.context, c.d_model, c.n_heads, c.n_enc_layers,
                c.n_dec_layers, c.ff_dim, c.max_src_len, c.max_tgt_len,
                static_cast<int>(c.freeze_encoder)})
    WriteU32(out, static_cast<std::uint32_t>(v));
  const auto moras = model.vocab().MoraTokens();
  WriteU32(out, static_cast<std::uint32_t>(moras.size()));
  for (const auto &m : moras) WriteString(out, m);
  WriteU64(out, model.params().size());
  for (float v : model.params()) WriteF32(out, v);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

AnnotatorModel<float> LoadCheckpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw Error(ErrorCode::kFormat, path.string() + " is not a checkpoint");
  const std::uint32_t version = ReadU32(in);
  if (version != kCheckpointVersion)
    throw Error(ErrorCode::kFormat, "unsupported checkpoint version " +
                                        std::to_string(version));
  ModelConfig c;
  c.input_dim = static_cast<int>(ReadU32(in));
  c.context = static_cast<int>(ReadU32(in));
  c.d_model = static_cast<int>(ReadU32(in));
  c.n_heads = static_cast<int>(ReadU32(in));
  c.n_enc_layers = static_cast<int>(ReadU32(in));
  c.n_dec_layers = static_cast<int>(ReadU32(in));
  c.ff_dim = static_cast<int>(ReadU32(in));
  c.max_src_len = static_cast<int>(ReadU32(in));
  c.max_tgt_len = static_cast<int>(ReadU32(in));
  c.freeze_encoder = ReadU32(in) != 0;
  c.Validate();
  const std::uint32_t n_moras = ReadU32(in);
  std::vector<std::string> moras;
  for (std::uint32_t i = 0; i < n_moras; ++i) moras.push_back(ReadString(in));
  AnnotatorModel<float> model(c, Vocabulary::Build(moras));
  const std::uint64_t n = ReadU64(in);
  if (n != model.params().size())
    throw Error(ErrorCode::kFormat, "parameter count mismatch in " + path.string());
  for (auto &v : model.params()) v = ReadF32(in);
  return model;
}

}  // namespace ttslabel
