// include/ttslabel/model.h

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

#ifndef TTSLABEL_MODEL_H_
#define TTSLABEL_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ttslabel/features.h"
#include "ttslabel/vocab.h"

namespace ttslabel {

struct ModelConfig {
  int input_dim = 12;
  int context = 1;  // frames spliced on each side of the centre frame
  int d_model = 32;
  int n_heads = 4;
  int n_enc_layers = 2;
  int n_dec_layers = 2;
  int ff_dim = 64;
  int max_src_len = 512;
  int max_tgt_len = 96;
  bool freeze_encoder = false;

  // Throws kInvalidConfig.
  void Validate() const;
  bool operator==(const ModelConfig &) const = default;
};

// Offsets of each tensor inside the flat parameter vector. Weights are
// stored row-major as [in, out].
struct LinearSlot {
  std::size_t w = 0, b = 0;
  int in = 0, out = 0;
};
struct NormSlot {
  std::size_t gain = 0, bias = 0;
  int dim = 0;
};
struct AttentionSlot {
  LinearSlot q, k, v, o;
};
struct FeedForwardSlot {
  LinearSlot up, down;
};
struct EncoderLayerSlot {
  NormSlot norm1;
  AttentionSlot self_attn;
  NormSlot norm2;
  FeedForwardSlot ff;
};
struct DecoderLayerSlot {
  NormSlot norm1;
  AttentionSlot self_attn;
  NormSlot norm2;
  AttentionSlot cross_attn;
  NormSlot norm3;
  FeedForwardSlot ff;
};

struct TensorInfo {
  std::string name;
  std::size_t offset = 0;
  int rows = 0, cols = 0;
  std::size_t size() const { return static_cast<std::size_t>(rows) * cols; }
};

struct ParamLayout {
  LinearSlot input;
  std::vector<EncoderLayerSlot> encoder;
  NormSlot encoder_norm;
  std::size_t embedding = 0;  // [vocab, d_model]
  std::vector<DecoderLayerSlot> decoder;
  NormSlot decoder_norm;
  LinearSlot output;
  // Parameters [0, encoder_size) belong to the speech encoder.
  std::size_t encoder_size = 0;
  std::size_t total = 0;
  std::vector<TensorInfo> tensors;

  static ParamLayout Build(const ModelConfig &cfg, int vocab_size);
};

// Encoder-decoder transformer over acoustic frames and label tokens.
template <typename Real>
class AnnotatorModel {
 public:
  AnnotatorModel() = default;
  // Zero-filled parameters; use Init for a trainable model.
  AnnotatorModel(const ModelConfig &cfg, const Vocabulary &vocab);

  // Deterministic initialization from `seed`. Throws kInvalidConfig.
  static AnnotatorModel Init(const ModelConfig &cfg, const Vocabulary &vocab,
                             std::uint64_t seed);

  const ModelConfig &config() const { return cfg_; }
  ModelConfig &mutable_config() { return cfg_; }
  const Vocabulary &vocab() const { return vocab_; }
  const ParamLayout &layout() const { return layout_; }
  std::vector<Real> &params() { return params_; }
  const std::vector<Real> &params() const { return params_; }

  template <typename Other>
  AnnotatorModel<Other> Cast() const {
    AnnotatorModel<Other> out(cfg_, vocab_);
    for (std::size_t i = 0; i < params_.size(); ++i)
      out.params()[i] = static_cast<Other>(params_[i]);
    return out;
  }

 private:
  ModelConfig cfg_;
  Vocabulary vocab_;
  ParamLayout layout_;
  std::vector<Real> params_;
};

// Closed-form parameter count.
std::size_t ParameterCount(const ModelConfig &cfg, int vocab_size);

// Mean over target positions of -log p(y_m | y_<m, X), where the targets are
// ids[1..]. When `grad` is non-null the gradient of that mean is added into
// it (same layout as params; encoder entries untouched when the encoder is
// frozen). `decoder_inputs`, when non-empty, replaces ids[0..] as the decoder
// input stream (same length as ids; used for input-token dropout) while the
// targets stay ids[1..]. Throws kSequenceTooLong and kDimMismatch.
template <typename Real>
Real TeacherForcedLoss(const AnnotatorModel<Real> &model, const AcousticFeatures &x,
                       std::span<const int> ids, std::vector<Real> *grad = nullptr,
                       std::span<const int> decoder_inputs = {});

// log p(ids[m] | ids[<m], X) for m = 1..|ids|-1, from one parallel pass.
template <typename Real>
std::vector<Real> TeacherForcedLogProbs(const AnnotatorModel<Real> &model,
                                        const AcousticFeatures &x,
                                        std::span<const int> ids);

// Encoder output, row-major [n_frames, d_model].
template <typename Real>
std::vector<Real> Encode(const AnnotatorModel<Real> &model, const AcousticFeatures &x);

// FNV-1a over the raw bytes of a parameter range.
std::uint64_t Checksum(std::span<const float> values);
std::uint64_t EncoderChecksum(const AnnotatorModel<float> &model);
std::uint64_t DecoderChecksum(const AnnotatorModel<float> &model);

// Versioned little-endian checkpoint: magic, version, config, vocabulary,
// then the float32 parameter dump.
void SaveCheckpoint(const std::filesystem::path &path,
                    const AnnotatorModel<float> &model);
AnnotatorModel<float> LoadCheckpoint(const std::filesystem::path &path);

}  // namespace ttslabel

#endif  // TTSLABEL_MODEL_H_
