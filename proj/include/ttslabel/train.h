// include/ttslabel/train.h

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

#ifndef TTSLABEL_TRAIN_H_
#define TTSLABEL_TRAIN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttslabel/model.h"

namespace ttslabel {

struct TrainConfig {
  int steps = 4000;
  int batch_size = 16;
  double peak_lr = 2e-3;
  int warmup_steps = 200;
  std::uint64_t seed = 1;
  int checkpoint_every = 250;
  double beta1 = 0.9;
  double beta2 = 0.98;
  double adam_eps = 1e-9;
  double clip_norm = 1.0;  // <= 0 disables clipping
  // Probability of replacing each decoder input token after <s> by <pad>
  // during training; the targets are unchanged.
  double token_dropout = 0.0;

  // Throws kInvalidConfig.
  void Validate() const;
};

// Linear warm-up to peak_lr over warmup_steps, then linear decay reaching
// zero at `steps`. `step` is 1-based.
double LearningRate(const TrainConfig &cfg, int step);

struct Example {
  const AcousticFeatures *features = nullptr;
  std::vector<int> ids;
};

struct TrainLogRow {
  int step = 0;
  double lr = 0.0;
  double train_loss = 0.0;
  std::optional<double> val_loss;
};

struct TrainResult {
  AnnotatorModel<float> best;
  AnnotatorModel<float> last;
  std::vector<TrainLogRow> log;
  std::vector<double> checkpoint_val_losses;
  std::size_t best_checkpoint = 0;  // index into checkpoint_val_losses
};

// Index of the smallest value; the earliest wins ties.
std::size_t SelectBestCheckpoint(std::span<const double> val_losses);

// Mean per-sequence teacher-forced loss.
double DatasetLoss(const AnnotatorModel<float> &model, std::span<const Example> data);

using ProgressFn = std::function<void(const TrainLogRow &)>;

// Adam training with gradient-norm clipping. Checkpoints are evaluated on
// `val` every checkpoint_every steps and at the final step; the one with the
// lowest validation loss is returned as `best`. Encoder parameters stay
// untouched when the model config freezes the encoder. Throws kEmptyDataset.
TrainResult Train(const AnnotatorModel<float> &init, std::span<const Example> train,
                  std::span<const Example> val, const TrainConfig &cfg,
                  const ProgressFn &progress = nullptr);

std::string FormatTrainLogCsv(const std::vector<TrainLogRow> &log);

}  // namespace ttslabel

#endif  // TTSLABEL_TRAIN_H_
