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

#include <fmt/format.h>

#include "sentcnn/corpus.hpp"
#include "sentcnn/error.hpp"

namespace sentcnn {

FoldPlan::FoldPlan(std::size_t k, std::vector<std::size_t> assignment,
                   std::uint64_t seed)
    : k_(k), assignment_(std::move(assignment)), seed_(seed) {
  if (k_ < 2) throw ValidationError("FoldPlan: k must be at least 2");
  std::vector<std::size_t> sizes(k_, 0);
  for (std::size_t f : assignment_) {
    if (f >= k_) throw ValidationError(fmt::format("FoldPlan: fold {} >= k={}", f, k_));
    ++sizes[f];
  }
  for (std::size_t f = 0; f < k_; ++f) {
    if (sizes[f] == 0) throw ValidationError(fmt::format("FoldPlan: fold {} is empty", f));
  }
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] != fold) out.push_back(i);
  }
  return out;
}

FoldPlan make_folds(std::span<const std::size_t> labels, std::size_t num_classes,
                    std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ValidationError("make_folds: k must be at least 2");
  std::vector<std::vector<std::size_t>> by_class(num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= num_classes) {
      throw ValidationError(fmt::format("make_folds: label {} out of range", labels[i]));
    }
    by_class[labels[i]].push_back(i);
  }
  std::vector<std::size_t> assignment(labels.size(), 0);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& members = by_class[c];
    if (members.size() < k) {
      throw ValidationError(fmt::format(
          "make_folds: class {} has {} examples, fewer than k={}", c, members.size(), k));
    }
    Rng rng(mix_seed(seed, c));
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t j = 0; j < members.size(); ++j) {
      assignment[members[j]] = (offset + j) % k;
    }
    offset = (offset + members.size()) % k;
  }
  return FoldPlan(k, std::move(assignment), seed);
}

FoldPlan make_folds(const Dataset& dataset, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> labels;
  labels.reserve(dataset.size());
  for (const auto& s : dataset.sentences()) labels.push_back(s.label);
  return make_folds(labels, dataset.num_classes(), k, seed);
}

}  // namespace sentcnn
