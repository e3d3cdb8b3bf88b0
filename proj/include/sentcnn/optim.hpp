// Copyright 2026 The sentcnn Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sentcnn/cnn.hpp"
#include "sentcnn/corpus.hpp"
#include "sentcnn/embeddings.hpp"
#include "sentcnn/rng.hpp"

namespace sentcnn {

struct AdadeltaConfig {
  double rho = 0.95;
  double eps = 1e-6;

  friend bool operator==(const AdadeltaConfig&, const AdadeltaConfig&) = default;
};

// Running averages E[g^2] and E[dx^2] for one parameter tensor.
struct AdadeltaState {
  std::vector<double> mean_sq_grad;
  std::vector<double> mean_sq_step;

  explicit AdadeltaState(std::size_t n = 0) : mean_sq_grad(n, 0.0), mean_sq_step(n, 0.0) {}
};

// One ADADELTA update, elementwise:
//   E[g^2]  <- rho E[g^2] + (1 - rho) g^2
//   dx      <- -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
//   E[dx^2] <- rho E[dx^2] + (1 - rho) dx^2
//   x       <- x + dx
void adadelta_step(std::span<double> param, std::span<const double> grad, AdadeltaState& state,
                   const AdadeltaConfig& config);
void adadelta_step(std::span<double> param, std::span<const double> grad,
                   std::span<double> mean_sq_grad, std::span<double> mean_sq_step,
                   const AdadeltaConfig& config);

// ADADELTA over the rows of an embedding matrix where each step only touches
// a few rows. Rows skipped for j steps have both averages decayed by rho^j
// when next touched, which matches a dense update with zero gradient.
class SparseRowAdadelta {
 public:
  SparseRowAdadelta(std::size_t rows, std::size_t cols);

  void step(Mat& table, const std::map<std::int32_t, std::vector<double>>& row_grads,
            const AdadeltaConfig& config);
  std::uint64_t steps() const noexcept { return step_; }

 private:
  std::size_t cols_;
  Mat mean_sq_grad_;
  Mat mean_sq_step_;
  std::vector<std::uint64_t> last_step_;
  std::uint64_t step_ = 0;
};

// ADADELTA for every trainable tensor of a CnnParams.
class CnnOptimizer {
 public:
  CnnOptimizer(const CnnParams& params, AdadeltaConfig config);
  void step(CnnParams& params, const CnnGrads& grads);

 private:
  AdadeltaConfig config_;
  std::vector<AdadeltaState> dense_;
  std::optional<SparseRowAdadelta> embedding_;
};

struct TrainConfig {
  std::size_t minibatch = 50;
  std::size_t max_epochs = 25;
  std::size_t patience = 5;
  double val_fraction = 0.10;
  std::uint64_t seed = 0;
  AdadeltaConfig adadelta;

  void validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct EncodedExample {
  std::vector<std::int32_t> ids;
  std::size_t label = 0;
};

std::vector<EncodedExample> encode(const Dataset& dataset, const SentenceEncoding& encoding);

// Evaluation-mode class probabilities / predicted label for one example.
std::vector<double> predict_proba(const SentenceEncoding& encoding, const CnnParams& params,
                                  const ModelConfig& model, const EncodedExample& example);
std::size_t predict_label(const SentenceEncoding& encoding, const CnnParams& params,
                          const ModelConfig& model, const EncodedExample& example);

struct EpochRecord {
  std::size_t epoch = 0;
  double loss = 0.0;          // mean training loss (train-mode forward)
  double val_accuracy = 0.0;  // fraction in [0, 1]
};

// Owns the model and optimizer state of one training run. Random streams for
// initialization, shuffling and dropout are children of the run seed.
class Trainer {
 public:
  Trainer(const SentenceEncoding& encoding, ModelConfig model, TrainConfig train);

  // One pass over `examples` in a freshly shuffled order with minibatch
  // updates; returns the mean training loss.
  double run_epoch(std::span<const EncodedExample> examples);

  // Mean gradient over `batch` in train mode; adds the summed loss to *loss.
  CnnGrads batch_gradient(std::span<const EncodedExample> batch, double* loss);
  // Applies one optimizer update (plus the norm constraint when configured).
  void apply(const CnnGrads& grads);

  std::size_t predict(const EncodedExample& example) const;
  std::vector<double> probabilities(const EncodedExample& example) const;
  double accuracy(std::span<const EncodedExample> examples) const;
  double loss(std::span<const EncodedExample> examples) const;

  const CnnParams& params() const noexcept { return params_; }
  CnnParams& params() noexcept { return params_; }
  const ModelConfig& model_config() const noexcept { return model_; }
  const SentenceEncoding& encoding() const noexcept { return encoding_; }

 private:
  SentenceEncoding encoding_;
  ModelConfig model_;
  TrainConfig train_;
  CnnParams params_;
  CnnOptimizer optimizer_;
  Rng shuffle_rng_;
  Rng dropout_rng_;
};

struct TrainResult {
  CnnParams params;  // best-validation snapshot
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
  double best_val_accuracy = 0.0;
};

// Splits off a stratified validation set, trains with early stopping on
// validation accuracy and returns the best snapshot. Training stops once
// `patience` consecutive epochs fail to improve on the best, or at
// max_epochs. When the split leaves no validation examples, training
// accuracy is used for selection.
TrainResult train_fold(const Dataset& train_set, const SentenceEncoding& encoding,
                       const ModelConfig& model, const TrainConfig& train);

// Stratified split of `labels` into (fit, validation) index lists. Each class
// contributes round(fraction * n_c) examples, capped at n_c - 1.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_validation(
    std::span<const std::size_t> labels, std::size_t num_classes, double fraction, Rng& rng);

}  // namespace sentcnn
