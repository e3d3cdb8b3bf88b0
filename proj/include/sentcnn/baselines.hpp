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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sentcnn/corpus.hpp"
#include "sentcnn/embeddings.hpp"
#include "sentcnn/mat.hpp"

namespace sentcnn {

inline constexpr std::size_t kDefaultNgramCap = 30000;

// Unigram + bigram vocabulary capped at the most frequent n-grams (ties broken
// lexicographically). Bigrams are keyed as "w1 w2".
class BowVectorizer {
 public:
  BowVectorizer() = default;

  static BowVectorizer fit(std::span<const std::vector<std::string>> sentences,
                           std::size_t cap = kDefaultNgramCap, bool binary = false);

  std::size_t size() const noexcept { return ngrams_.size(); }
  const std::vector<std::string>& ngrams() const noexcept { return ngrams_; }
  std::optional<std::size_t> index(std::string_view ngram) const;
  bool binary() const noexcept { return binary_; }

  // Sparse count (or 0/1) features, sorted by index.
  std::vector<std::pair<std::uint32_t, double>> transform(
      std::span<const std::string> tokens) const;

 private:
  std::vector<std::string> ngrams_;
  std::unordered_map<std::string, std::size_t> index_;
  bool binary_ = false;
};

// Raw uni+bigram counts over a corpus.
std::map<std::string, std::size_t> count_ngrams(
    std::span<const std::vector<std::string>> sentences);

enum class FeatureMode { kBow, kAvgWordVector, kBowPlusWordVector };
FeatureMode parse_feature_mode(std::string_view name);  // bow | wv | bowwv

// Mean of the in-vocabulary word vectors (zero vector if none are found).
std::vector<double> average_word_vector(std::span<const std::string> tokens,
                                        const EmbeddingTable& table);

// Sparse feature row.
struct FeatureRow {
  std::vector<std::uint32_t> index;
  std::vector<double> value;
};

class Featurizer {
 public:
  // `vectorizer` is required for bow modes, `table` for word-vector modes.
  Featurizer(FeatureMode mode, const BowVectorizer* vectorizer, const EmbeddingTable* table);

  std::size_t width() const noexcept;
  FeatureRow sparse(std::span<const std::string> tokens) const;
  std::vector<double> dense(std::span<const std::string> tokens) const;

 private:
  FeatureMode mode_;
  const BowVectorizer* vectorizer_;
  const EmbeddingTable* table_;
};

// Multinomial logistic regression: weights (classes x features) + bias.
struct LinearModel {
  Mat weights;
  std::vector<double> bias;
  double l2_lambda = 0.0;

  std::vector<double> probabilities(const FeatureRow& row) const;
  std::size_t predict(const FeatureRow& row) const;
};

struct LogRegOptions {
  double l2_lambda = 1e-4;
  std::size_t max_iterations = 2000;
  double gradient_tolerance = 1e-7;
};

// Mean cross-entropy + lambda/2 * ||W||^2 (bias unregularized); fills `grad_w`
// and `grad_b` when non-null.
double logreg_objective(const LinearModel& model, std::span<const FeatureRow> rows,
                        std::span<const std::size_t> labels, Mat* grad_w,
                        std::vector<double>* grad_b);

// Full-batch gradient descent with a backtracking (Armijo) step size,
// starting from `init` when given and from zero otherwise.
LinearModel train_logreg(std::span<const FeatureRow> rows, std::span<const std::size_t> labels,
                         std::size_t num_features, std::size_t num_classes,
                         const LogRegOptions& options, const LinearModel* init = nullptr);

inline constexpr std::array<double, 5> kLambdaGrid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};

struct LambdaSelection {
  double lambda = 0.0;
  std::vector<double> inner_accuracy;  // per grid entry
};

// Picks lambda from the grid by inner stratified k-fold CV accuracy (ties go
// to the larger lambda).
LambdaSelection select_lambda(std::span<const FeatureRow> rows, std::span<const std::size_t> labels,
                              std::size_t num_features, std::size_t num_classes,
                              std::span<const double> grid, std::size_t inner_folds,
                              std::uint64_t seed, const LogRegOptions& base = {});

struct BaselineOptions {
  FeatureMode mode = FeatureMode::kBow;
  std::size_t ngram_cap = kDefaultNgramCap;
  bool binary_counts = false;
  std::size_t inner_folds = 3;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// Outer CV of the logistic-regression baseline over a fixed fold plan. The
// vectorizer and lambda are fitted on each training split only. Scores are
// accuracy in percent.
std::vector<double> run_baseline_cv(const Dataset& dataset, const FoldPlan& plan,
                                    const EmbeddingTable* table, const BaselineOptions& options);

}  // namespace sentcnn
