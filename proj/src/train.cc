// src/train.cc

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

#include "ttslabel/train.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "ttslabel/error.h"
#include "ttslabel/rng.h"

namespace ttslabel {

void TrainConfig::Validate() const {
  auto fail = [](const std::string &msg) { throw Error(ErrorCode::kInvalidConfig, msg); };
  if (steps <= 0) fail("steps must be positive");
  if (batch_size <= 0) fail("batch_size must be positive");
  if (warmup_steps < 0 || warmup_steps >= steps) fail("need 0 <= warmup_steps < steps");
  if (!(peak_lr > 0)) fail("peak_lr must be positive");
  if (checkpoint_every <= 0) fail("checkpoint_every must be positive");
  if (!(beta1 >= 0 && beta1 < 1 && beta2 >= 0 && beta2 < 1)) fail("bad Adam betas");
  if (!(token_dropout >= 0 && token_dropout < 1)) fail("token_dropout must be in [0, 1)");
}

double LearningRate(const TrainConfig &cfg, int step) {
  if (step <= 0) return 0.0;
  if (cfg.warmup_steps > 0 && step <= cfg.warmup_steps)
    return cfg.peak_lr * step / cfg.warmup_steps;
  const double remaining = static_cast<double>(cfg.steps - step);
  const double span = static_cast<double>(cfg.steps - cfg.warmup_steps);
  return std::max(0.0, cfg.peak_lr * remaining / span);
}

std::size_t SelectBestCheckpoint(std::span<const double> val_losses) {
  if (val_losses.empty()) throw Error(ErrorCode::kEmptyDataset, "no checkpoints");
  return static_cast<std::size_t>(
      std::min_element(val_losses.begin(), val_losses.end()) - val_losses.begin());
}

double DatasetLoss(const AnnotatorModel<float> &model, std::span<const Example> data) {
  if (data.empty()) throw Error(ErrorCode::kEmptyDataset, "empty dataset");
  double total = 0.0;
  for (const Example &ex : data)
    total += static_cast<double>(TeacherForcedLoss(model, *ex.features, ex.ids));
  return total / static_cast<double>(data.size());
}

TrainResult Train(const AnnotatorModel<float> &init, std::span<const Example> train,
                  std::span<const Example> val, const TrainConfig &cfg,
                  const ProgressFn &progress) {
  cfg.Validate();
  if (train.empty()) throw Error(ErrorCode::kEmptyDataset, "empty training set");
  if (val.empty()) throw Error(ErrorCode::kEmptyDataset, "empty validation set");

  TrainResult result;
  AnnotatorModel<float> model = init;
  auto &params = model.params();
  const std::size_t n_params = params.size();
  const std::size_t first = model.config().freeze_encoder ? model.layout().encoder_size : 0;
  std::vector<float> grad(n_params), m1(n_params, 0.0f), m2(n_params, 0.0f);

  Rng rng(DeriveSeed(cfg.seed, 0x7a1));
  Rng dropout_rng(DeriveSeed(cfg.seed, 0xd20));
  std::vector<int> inputs;
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t cursor = order.size();

  bool have_best = false;
  for (int step = 1; step <= cfg.steps; ++step) {
    std::fill(grad.begin(), grad.end(), 0.0f);
    double loss_sum = 0.0;
    for (int b = 0; b < cfg.batch_size; ++b) {
      if (cursor == order.size()) {
        // Fisher-Yates reshuffle at each epoch boundary.
        for (std::size_t i = order.size(); i > 1; --i)
          std::swap(order[i - 1], order[rng.NextU64() % i]);
        cursor = 0;
      }
      const Example &ex = train[order[cursor++]];
      inputs.clear();
      if (cfg.token_dropout > 0) {
        inputs = ex.ids;
        for (std::size_t t = 1; t < inputs.size(); ++t)
          if (dropout_rng.Bernoulli(cfg.token_dropout)) inputs[t] = model.vocab().pad();
      }
      loss_sum +=
          static_cast<double>(TeacherForcedLoss(model, *ex.features, ex.ids, &grad, inputs));
    }
    const float inv_batch = 1.0f / static_cast<float>(cfg.batch_size);
    double norm_sq = 0.0;
    for (std::size_t i = first; i < n_params; ++i) {
      grad[i] *= inv_batch;
      norm_sq += static_cast<double>(grad[i]) * grad[i];
    }
    float clip = 1.0f;
    const double norm = std::sqrt(norm_sq);
    if (cfg.clip_norm > 0 && norm > cfg.clip_norm)
      clip = static_cast<float>(cfg.clip_norm / norm);

    const double lr = LearningRate(cfg, step);
    const double bc1 = 1.0 - std::pow(cfg.beta1, step);
    const double bc2 = 1.0 - std::pow(cfg.beta2, step);
    const float b1 = static_cast<float>(cfg.beta1), b2 = static_cast<float>(cfg.beta2);
    const float step_size = static_cast<float>(lr / bc1);
    const float inv_bc2 = static_cast<float>(1.0 / bc2);
    const float eps = static_cast<float>(cfg.adam_eps);
    for (std::size_t i = first; i < n_params; ++i) {
      const float g = grad[i] * clip;
      m1[i] = b1 * m1[i] + (1.0f - b1) * g;
      m2[i] = b2 * m2[i] + (1.0f - b2) * g * g;
      params[i] -= step_size * m1[i] / (std::sqrt(m2[i] * inv_bc2) + eps);
    }

    TrainLogRow row;
    row.step = step;
    row.lr = lr;
    row.train_loss = loss_sum / cfg.batch_size;
    if (step % cfg.checkpoint_every == 0 || step == cfg.steps) {
      const double vl = DatasetLoss(model, val);
      row.val_loss = vl;
      result.checkpoint_val_losses.push_back(vl);
      if (!have_best || vl < result.checkpoint_val_losses[result.best_checkpoint]) {
        result.best_checkpoint = result.checkpoint_val_losses.size() - 1;
        result.best = model;
        have_best = true;
      }
    }
    result.log.push_back(row);
    if (progress) progress(row);
  }
  result.last = std::move(model);
  return result;
}

std::string FormatTrainLogCsv(const std::vector<TrainLogRow> &log) {
  std::ostringstream out;
  out << "step,lr,train_loss,val_loss\n";
  char buf[128];
  for (const auto &r : log) {
    std::snprintf(buf, sizeof(buf), "%d,%.8g,%.6f,", r.step, r.lr, r.train_loss);
    out << buf;
    if (r.val_loss) {
      std::snprintf(buf, sizeof(buf), "%.6f", *r.val_loss);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ttslabel
