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

#include <fmt/format.h>

#include "sentcnn/baselines.hpp"
#include "sentcnn/error.hpp"

namespace sentcnn {

namespace {

template <typename Fn>
void for_each_ngram(std::span<const std::string> tokens, Fn&& fn) {
  std::string bigram;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    fn(tokens[i]);
    if (i + 1 < tokens.size()) {
      bigram.assign(tokens[i]);
      bigram.push_back(' ');
      bigram.append(tokens[i + 1]);
      fn(bigram);
    }
  }
}

}  // namespace

std::map<std::string, std::size_t> count_ngrams(
    std::span<const std::vector<std::string>> sentences) {
  std::map<std::string, std::size_t> counts;
  for (const auto& s : sentences) {
    for_each_ngram(s, [&](const std::string& g) { ++counts[g]; });
  }
  return counts;
}

BowVectorizer BowVectorizer::fit(std::span<const std::vector<std::string>> sentences,
                                 std::size_t cap, bool binary) {
  const auto counts = count_ngrams(sentences);
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  // Equal counts keep the map's lexicographic order.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > cap) ranked.resize(cap);
  BowVectorizer v;
  v.binary_ = binary;
  v.ngrams_.reserve(ranked.size());
  for (auto& [gram, count] : ranked) {
    v.index_.emplace(gram, v.ngrams_.size());
    v.ngrams_.push_back(std::move(gram));
  }
  return v;
}

std::optional<std::size_t> BowVectorizer::index(std::string_view ngram) const {
  const auto it = index_.find(std::string(ngram));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::uint32_t, double>> BowVectorizer::transform(
    std::span<const std::string> tokens) const {
  std::map<std::uint32_t, double> counts;
  for_each_ngram(tokens, [&](const std::string& g) {
    const auto it = index_.find(g);
    if (it == index_.end()) return;
    double& c = counts[static_cast<std::uint32_t>(it->second)];
    c = binary_ ? 1.0 : c + 1.0;
  });
  return {counts.begin(), counts.end()};
}

FeatureMode parse_feature_mode(std::string_view name) {
  if (name == "bow") return FeatureMode::kBow;
  if (name == "wv") return FeatureMode::kAvgWordVector;
  if (name == "bowwv") return FeatureMode::kBowPlusWordVector;
  throw ValidationError(fmt::format("unknown baseline mode '{}' (bow, wv, bowwv)", name));
}

std::vector<double> average_word_vector(std::span<const std::string> tokens,
                                        const EmbeddingTable& table) {
  std::vector<double> mean(table.dim(), 0.0);
  std::size_t found = 0;
  for (const auto& t : tokens) {
    if (const auto v = table.vector(t)) {
      for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += (*v)[j];
      ++found;
    }
  }
  if (found > 0) {
    for (double& x : mean) x /= static_cast<double>(found);
  }
  return mean;
}

Featurizer::Featurizer(FeatureMode mode, const BowVectorizer* vectorizer,
                       const EmbeddingTable* table)
    : mode_(mode), vectorizer_(vectorizer), table_(table) {
  if (mode_ != FeatureMode::kAvgWordVector && vectorizer_ == nullptr) {
    throw ValidationError("bag-of-n-grams features need a fitted vectorizer");
  }
  if (mode_ != FeatureMode::kBow && table_ == nullptr) {
    throw ValidationError("word-vector features need an embedding table");
  }
}

std::size_t Featurizer::width() const noexcept {
  switch (mode_) {
    case FeatureMode::kBow: return vectorizer_->size();
    case FeatureMode::kAvgWordVector: return table_->dim();
    case FeatureMode::kBowPlusWordVector: return vectorizer_->size() + table_->dim();
  }
  return 0;
}

FeatureRow Featurizer::sparse(std::span<const std::string> tokens) const {
  FeatureRow row;
  std::uint32_t offset = 0;
  if (mode_ != FeatureMode::kAvgWordVector) {
    for (const auto& [i, v] : vectorizer_->transform(tokens)) {
      row.index.push_back(i);
      row.value.push_back(v);
    }
    offset = static_cast<std::uint32_t>(vectorizer_->size());
  }
  if (mode_ != FeatureMode::kBow) {
    const auto mean = average_word_vector(tokens, *table_);
    for (std::size_t j = 0; j < mean.size(); ++j) {
      row.index.push_back(offset + static_cast<std::uint32_t>(j));
      row.value.push_back(mean[j]);
    }
  }
  return row;
}

std::vector<double> Featurizer::dense(std::span<const std::string> tokens) const {
  std::vector<double> out(width(), 0.0);
  const auto row = sparse(tokens);
  for (std::size_t k = 0; k < row.index.size(); ++k) out[row.index[k]] = row.value[k];
  return out;
}

}  // namespace sentcnn
