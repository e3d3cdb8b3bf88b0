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
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "sentcnn/error.hpp"
#include "sentcnn/eval.hpp"

namespace sentcnn {

namespace {

std::size_t resolve_threads(std::size_t requested, std::size_t tasks) {
  std::size_t n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return std::max<std::size_t>(1, std::min(n, tasks));
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = resolve_threads(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double score_examples(const SentenceEncoding& encoding, const CnnParams& params,
                      const ModelConfig& model, std::span<const EncodedExample> examples,
                      Metric metric) {
  std::vector<std::size_t> labels;
  labels.reserve(examples.size());
  for (const auto& ex : examples) labels.push_back(ex.label);
  if (metric == Metric::kAccuracy) {
    std::vector<std::size_t> preds;
    preds.reserve(examples.size());
    for (const auto& ex : examples) preds.push_back(predict_label(encoding, params, model, ex));
    return 100.0 * accuracy(preds, labels);
  }
  if (model.num_classes != 2) {
    throw ValidationError("AUC is only defined for binary datasets");
  }
  std::vector<double> scores;
  scores.reserve(examples.size());
  for (const auto& ex : examples) scores.push_back(predict_proba(encoding, params, model, ex)[1]);
  return 100.0 * roc_auc(scores, labels);
}

CvResult run_cv(const Dataset& dataset, const FoldPlan& plan, const SentenceEncoding& encoding,
                const ModelConfig& model, const TrainConfig& train, const CvOptions& options) {
  if (plan.size() != dataset.size()) {
    throw ValidationError(fmt::format("run_cv: fold plan covers {} examples, dataset has {}",
                                      plan.size(), dataset.size()));
  }
  if (options.metric == Metric::kAuc && model.num_classes != 2) {
    throw ValidationError("AUC is only defined for binary datasets");
  }
  CvResult result;
  result.fold_scores.assign(plan.k(), 0.0);
  result.fold_seconds.assign(plan.k(), 0.0);
  parallel_for(plan.k(), options.threads, [&](std::size_t fold) {
    const auto started = std::chrono::steady_clock::now();
    try {
      const Dataset train_set = dataset.subset(plan.train_indices(fold));
      const Dataset test_set = dataset.subset(plan.test_indices(fold));
      TrainConfig fold_train = train;
      fold_train.seed = mix_seed(train.seed, fold);
      const TrainResult trained = train_fold(train_set, encoding, model, fold_train);
      result.fold_scores[fold] = score_examples(encoding, trained.params, model,
                                                encode(test_set, encoding), options.metric);
      result.fold_seconds[fold] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("fold {}: {}", fold, e.what()));
    } catch (const std::exception& e) {
      throw std::runtime_error(fmt::format("fold {}: {}", fold, e.what()));
    }
  });
  result.mean = mean_of(result.fold_scores);
  return result;
}

ReplicationReport replicate_cv(
    std::size_t n_reps, const Dataset& dataset, const FoldPlan& plan,
    const SentenceEncoding& encoding, const ModelConfig& model, const TrainConfig& train,
    const CvOptions& options,
    const std::function<void(std::size_t, const ReplicationDetail&)>& on_replication) {
  if (n_reps < 1) throw ValidationError("replicate_cv: need at least one replication");
  std::vector<double> means(n_reps, 0.0);
  const std::size_t wave = resolve_threads(options.threads, n_reps);
  CvOptions inner = options;
  inner.threads = 1;
  for (std::size_t first = 0; first < n_reps; first += wave) {
    const std::size_t count = std::min(wave, n_reps - first);
    std::vector<ReplicationDetail> details(count);
    parallel_for(count, wave, [&](std::size_t j) {
      const std::size_t rep = first + j;
      TrainConfig rep_train = train;
      rep_train.seed = mix_seed(train.seed, rep);
      details[j].seed = rep_train.seed;
      details[j].cv = run_cv(dataset, plan, encoding, model, rep_train, inner);
    });
    for (std::size_t j = 0; j < count; ++j) {
      means[first + j] = details[j].cv.mean;
      if (on_replication) on_replication(first + j, details[j]);
    }
  }
  return ReplicationReport::from(std::move(means), options.metric);
}

}  // namespace sentcnn
