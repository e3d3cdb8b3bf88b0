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
#include <numeric>

#include <fmt/format.h>

#include "sentcnn/error.hpp"
#include "sentcnn/eval.hpp"

namespace sentcnn {

Metric parse_metric(std::string_view name) {
  if (name == "acc" || name == "accuracy") return Metric::kAccuracy;
  if (name == "auc") return Metric::kAuc;
  throw ValidationError(fmt::format("unknown metric '{}' (expected acc or auc)", name));
}

std::string_view to_string(Metric m) noexcept {
  return m == Metric::kAccuracy ? "accuracy" : "auc";
}

double accuracy(std::span<const std::size_t> preds, std::span<const std::size_t> labels) {
  if (preds.size() != labels.size()) {
    throw ValidationError(fmt::format("accuracy: {} predictions for {} labels", preds.size(),
                                      labels.size()));
  }
  if (preds.empty()) throw ValidationError("accuracy: no predictions");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) hits += preds[i] == labels[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double roc_auc(std::span<const double> scores, std::span<const std::size_t> labels) {
  if (scores.size() != labels.size()) {
    throw ValidationError(fmt::format("roc_auc: {} scores for {} labels", scores.size(),
                                      labels.size()));
  }
  std::size_t n_pos = 0;
  for (std::size_t y : labels) {
    if (y > 1) throw ValidationError(fmt::format("roc_auc: label {} is not binary", y));
    n_pos += y;
  }
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ValidationError("roc_auc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of 1-based midranks of the positive examples.
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) pos_rank_sum += midrank;
    }
    i = j;
  }
  const double np = static_cast<double>(n_pos);
  const double nn = static_cast<double>(n_neg);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

std::vector<double> percent_change(std::span<const double> series, std::size_t baseline_index) {
  if (baseline_index >= series.size()) {
    throw ValidationError(fmt::format("percent_change: baseline index {} out of range",
                                      baseline_index));
  }
  const double base = series[baseline_index];
  if (base == 0.0) throw ValidationError("percent_change: baseline score is zero");
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    out[i] = i == baseline_index ? 0.0 : 100.0 * (series[i] - base) / base;
  }
  return out;
}

ReplicationReport ReplicationReport::from(std::vector<double> per_replication, Metric metric) {
  if (per_replication.empty()) throw ValidationError("ReplicationReport: no replications");
  ReplicationReport r;
  r.metric = metric;
  r.per_replication = std::move(per_replication);
  const auto [lo, hi] = std::minmax_element(r.per_replication.begin(), r.per_replication.end());
  r.min = *lo;
  r.max = *hi;
  r.mean = std::accumulate(r.per_replication.begin(), r.per_replication.end(), 0.0) /
           static_cast<double>(r.per_replication.size());
  // Guard against the mean drifting past an extreme by one ulp.
  r.mean = std::clamp(r.mean, r.min, r.max);
  return r;
}

}  // namespace sentcnn
