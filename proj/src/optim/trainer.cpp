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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sentcnn/error.hpp"
#include "sentcnn/numeric.hpp"
#include "sentcnn/optim.hpp"

namespace sentcnn {

namespace {

enum Stream : std::uint64_t { kInit = 0, kShuffle = 1, kDropout = 2, kValidation = 3 };

std::size_t argmax(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

void TrainConfig::validate() const {
  if (minibatch < 1) throw ValidationError("minibatch size must be >= 1");
  if (max_epochs < 1) throw ValidationError("max_epochs must be >= 1");
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw ValidationError(fmt::format("validation fraction must be in (0, 1), got {}", val_fraction));
  }
  if (!(adadelta.rho > 0.0 && adadelta.rho < 1.0)) {
    throw ValidationError(fmt::format("ADADELTA rho must be in (0, 1), got {}", adadelta.rho));
  }
  if (!(adadelta.eps > 0.0)) {
    throw ValidationError(fmt::format("ADADELTA eps must be positive, got {}", adadelta.eps));
  }
}

std::vector<EncodedExample> encode(const Dataset& dataset, const SentenceEncoding& encoding) {
  std::vector<EncodedExample> out;
  out.reserve(dataset.size());
  for (const auto& s : dataset.sentences()) out.push_back({encoding.ids(s.tokens), s.label});
  return out;
}

Trainer::Trainer(const SentenceEncoding& encoding, ModelConfig model, TrainConfig train)
    : encoding_(encoding),
      model_(std::move(model)),
      train_(train),
      params_([&] {
        train_.validate();
        Rng init(mix_seed(train_.seed, kInit));
        return init_params(model_, encoding_, init);
      }()),
      optimizer_(params_, train_.adadelta),
      shuffle_rng_(mix_seed(train_.seed, kShuffle)),
      dropout_rng_(mix_seed(train_.seed, kDropout)) {}

CnnGrads Trainer::batch_gradient(std::span<const EncodedExample> batch, double* loss) {
  CnnGrads grads = CnnGrads::zeros_like(params_);
  if (batch.empty()) return grads;
  double total = 0.0;
  for (const auto& ex : batch) {
    const Mat a = input_matrix(encoding_, params_, ex.ids);
    const ForwardTrace trace = forward(a, ex.ids, params_, model_, &dropout_rng_, true);
    total += cross_entropy(trace.probs, ex.label);
    backward_accumulate(trace, params_, model_, ex.label, grads);
  }
  grads.scale(1.0 / static_cast<double>(batch.size()));
  if (loss != nullptr) *loss += total;
  return grads;
}

void Trainer::apply(const CnnGrads& grads) {
  optimizer_.step(params_, grads);
  if (model_.l2_constraint) apply_constraint(params_, *model_.l2_constraint);
}

double Trainer::run_epoch(std::span<const EncodedExample> examples) {
  if (examples.empty()) throw ValidationError("run_epoch: no training examples");
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  shuffle_rng_.shuffle(std::span<std::size_t>(order));

  std::vector<EncodedExample> batch;
  double total_loss = 0.0;
  for (std::size_t start = 0; start < order.size(); start += train_.minibatch) {
    const std::size_t stop = std::min(order.size(), start + train_.minibatch);
    batch.clear();
    for (std::size_t i = start; i < stop; ++i) batch.push_back(examples[order[i]]);
    apply(batch_gradient(batch, &total_loss));
  }
  return total_loss / static_cast<double>(examples.size());
}

std::vector<double> predict_proba(const SentenceEncoding& encoding, const CnnParams& params,
                                  const ModelConfig& model, const EncodedExample& example) {
  return predict(input_matrix(encoding, params, example.ids), params, model);
}

std::size_t predict_label(const SentenceEncoding& encoding, const CnnParams& params,
                          const ModelConfig& model, const EncodedExample& example) {
  return argmax(predict_proba(encoding, params, model, example));
}

std::vector<double> Trainer::probabilities(const EncodedExample& example) const {
  return predict_proba(encoding_, params_, model_, example);
}

std::size_t Trainer::predict(const EncodedExample& example) const {
  return predict_label(encoding_, params_, model_, example);
}

double Trainer::accuracy(std::span<const EncodedExample> examples) const {
  if (examples.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& ex : examples) correct += predict(ex) == ex.label ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

double Trainer::loss(std::span<const EncodedExample> examples) const {
  if (examples.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ex : examples) total += cross_entropy(probabilities(ex), ex.label);
  return total / static_cast<double>(examples.size());
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_validation(
    std::span<const std::size_t> labels, std::size_t num_classes, double fraction, Rng& rng) {
  std::vector<std::vector<std::size_t>> by_class(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) by_class.at(labels[i]).push_back(i);
  std::vector<std::size_t> fit;
  std::vector<std::size_t> val;
  for (auto& members : by_class) {
    if (members.empty()) continue;
    rng.shuffle(std::span<std::size_t>(members));
    auto take = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(members.size())));
    take = std::min(take, members.size() - 1);
    val.insert(val.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
    fit.insert(fit.end(), members.begin() + static_cast<std::ptrdiff_t>(take), members.end());
  }
  std::sort(fit.begin(), fit.end());
  std::sort(val.begin(), val.end());
  return {std::move(fit), std::move(val)};
}

TrainResult train_fold(const Dataset& train_set, const SentenceEncoding& encoding,
                       const ModelConfig& model, const TrainConfig& train) {
  if (train_set.size() == 0) throw ValidationError("train_fold: empty training set");
  train.validate();
  const auto examples = encode(train_set, encoding);
  std::vector<std::size_t> labels;
  labels.reserve(examples.size());
  for (const auto& ex : examples) labels.push_back(ex.label);
  for (std::size_t c = 0; c < model.num_classes; ++c) {
    if (std::find(labels.begin(), labels.end(), c) == labels.end()) {
      throw ValidationError(fmt::format("train_fold: class {} has no training examples", c));
    }
  }

  Rng split_rng(mix_seed(train.seed, kValidation));
  const auto [fit_idx, val_idx] =
      split_validation(labels, model.num_classes, train.val_fraction, split_rng);
  std::vector<EncodedExample> fit;
  std::vector<EncodedExample> val;
  for (std::size_t i : fit_idx) fit.push_back(examples[i]);
  for (std::size_t i : val_idx) val.push_back(examples[i]);
  const auto& selection = val.empty() ? fit : val;
  if (val.empty()) spdlog::debug("train_fold: empty validation split, selecting on training accuracy");

  Trainer trainer(encoding, model, train);
  TrainResult result;
  result.params = trainer.params();
  double best = -1.0;
  std::size_t since_best = 0;
  for (std::size_t epoch = 1; epoch <= train.max_epochs; ++epoch) {
    const double loss = trainer.run_epoch(fit);
    const double acc = trainer.accuracy(selection);
    result.history.push_back({epoch, loss, acc});
    if (acc > best) {
      best = acc;
      result.params = trainer.params();
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best > train.patience) {
      break;
    }
  }
  result.best_val_accuracy = best;
  return result;
}

}  // namespace sentcnn
