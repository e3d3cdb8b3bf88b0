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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sentcnn/cnn.hpp"
#include "sentcnn/corpus.hpp"
#include "sentcnn/embeddings.hpp"
#include "sentcnn/optim.hpp"

namespace sentcnn {

enum class Metric { kAccuracy, kAuc };
Metric parse_metric(std::string_view name);  // "acc" / "accuracy" / "auc"
std::string_view to_string(Metric m) noexcept;

// Fraction of positions where preds[i] == labels[i].
double accuracy(std::span<const std::size_t> preds, std::span<const std::size_t> labels);

// Area under the ROC curve via the Mann-Whitney rank statistic with midranks
// for ties. `scores` are positive-class scores, labels are 0/1.
double roc_auc(std::span<const double> scores, std::span<const std::size_t> labels);

// 100 * (series[i] - series[b]) / series[b].
std::vector<double> percent_change(std::span<const double> series, std::size_t baseline_index);

struct ReplicationReport {
  Metric metric = Metric::kAccuracy;
  std::vector<double> per_replication;  // CV means, percent
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;

  // Builds the aggregate from per-replication means. Requires at least one.
  static ReplicationReport from(std::vector<double> per_replication, Metric metric);

  friend bool operator==(const ReplicationReport&, const ReplicationReport&) = default;
};

struct CvResult {
  std::vector<double> fold_scores;   // percent
  std::vector<double> fold_seconds;  // wall time per fold
  double mean = 0.0;

  // Timing is excluded from comparisons.
  friend bool operator==(const CvResult& a, const CvResult& b) {
    return a.fold_scores == b.fold_scores && a.mean == b.mean;
  }
};

// Scores one trained model on held-out examples, in percent.
double score_examples(const SentenceEncoding& encoding, const CnnParams& params,
                      const ModelConfig& model, std::span<const EncodedExample> examples,
                      Metric metric);

struct CvOptions {
  Metric metric = Metric::kAccuracy;
  // Worker threads for folds (run_cv) or replications (replicate_cv);
  // 0 means hardware concurrency. Results do not depend on this value.
  std::size_t threads = 1;
};

// k-fold cross-validation: fold f trains on the other folds with training
// seed mix_seed(train.seed, f) and scores fold f.
CvResult run_cv(const Dataset& dataset, const FoldPlan& plan, const SentenceEncoding& encoding,
                const ModelConfig& model, const TrainConfig& train, const CvOptions& options = {});

struct ReplicationDetail {
  std::uint64_t seed = 0;
  CvResult cv;
};

// Runs n_reps cross-validations over the same fold plan. Replication r uses
// training seed mix_seed(train.seed, r). `on_replication` (optional) is called
// once per finished replication, from the calling thread, in index order.
ReplicationReport replicate_cv(
    std::size_t n_reps, const Dataset& dataset, const FoldPlan& plan,
    const SentenceEncoding& encoding, const ModelConfig& model, const TrainConfig& train,
    const CvOptions& options = {},
    const std::function<void(std::size_t, const ReplicationDetail&)>& on_replication = {});

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). The first exception thrown is rethrown after all workers
// finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace sentcnn
