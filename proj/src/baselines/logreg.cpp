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

#include "sentcnn/baselines.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/eval.hpp"
#include "sentcnn/numeric.hpp"

namespace sentcnn {

namespace {

void logits_into(const LinearModel& model, const FeatureRow& row, std::span<double> out) {
  for (std::size_t c = 0; c < out.size(); ++c) {
    const auto w = model.weights.row(c);
    double z = model.bias[c];
    for (std::size_t k = 0; k < row.index.size(); ++k) z += w[row.index[k]] * row.value[k];
    out[c] = z;
  }
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

LinearModel zero_model(std::size_t num_features, std::size_t num_classes, double lambda) {
  LinearModel m;
  m.weights = Mat(num_classes, num_features);
  m.bias.assign(num_classes, 0.0);
  m.l2_lambda = lambda;
  return m;
}

}  // namespace

std::vector<double> LinearModel::probabilities(const FeatureRow& row) const {
  std::vector<double> p(bias.size());
  logits_into(*this, row, p);
  softmax_inplace(p);
  return p;
}

std::size_t LinearModel::predict(const FeatureRow& row) const {
  const auto p = probabilities(row);
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

double logreg_objective(const LinearModel& model, std::span<const FeatureRow> rows,
                        std::span<const std::size_t> labels, Mat* grad_w,
                        std::vector<double>* grad_b) {
  const std::size_t classes = model.bias.size();
  if (grad_w != nullptr) *grad_w = Mat(model.weights.rows(), model.weights.cols());
  if (grad_b != nullptr) grad_b->assign(classes, 0.0);
  std::vector<double> p(classes);
  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    logits_into(model, rows[i], p);
    softmax_inplace(p);
    loss += cross_entropy(p, labels[i]);
    if (grad_w == nullptr) continue;
    for (std::size_t c = 0; c < classes; ++c) {
      const double d = (p[c] - (c == labels[i] ? 1.0 : 0.0)) * inv_n;
      (*grad_b)[c] += d;
      auto g = grad_w->row(c);
      for (std::size_t k = 0; k < rows[i].index.size(); ++k) {
        g[rows[i].index[k]] += d * rows[i].value[k];
      }
    }
  }
  loss *= inv_n;
  loss += 0.5 * model.l2_lambda * squared_norm(model.weights.flat());
  if (grad_w != nullptr) {
    auto g = grad_w->flat();
    const auto w = model.weights.flat();
    for (std::size_t j = 0; j < g.size(); ++j) g[j] += model.l2_lambda * w[j];
  }
  return loss;
}

LinearModel train_logreg(std::span<const FeatureRow> rows, std::span<const std::size_t> labels,
                         std::size_t num_features, std::size_t num_classes,
                         const LogRegOptions& options, const LinearModel* init) {
  if (rows.size() != labels.size() || rows.empty()) {
    throw ValidationError("train_logreg: need a non-empty feature set with one label per row");
  }
  std::vector<std::size_t> seen(num_classes, 0);
  for (std::size_t y : labels) {
    if (y >= num_classes) throw ValidationError(fmt::format("train_logreg: label {} out of range", y));
    ++seen[y];
  }
  if (std::count_if(seen.begin(), seen.end(), [](std::size_t n) { return n > 0; }) < 2) {
    throw ValidationError("train_logreg: training data contains a single class");
  }
  for (const auto& r : rows) {
    for (std::uint32_t j : r.index) {
      if (j >= num_features) throw ValidationError("train_logreg: feature index out of range");
    }
  }

  LinearModel model = init != nullptr ? *init : zero_model(num_features, num_classes, 0.0);
  model.l2_lambda = options.l2_lambda;
  Mat gw;
  std::vector<double> gb;
  double f = logreg_objective(model, rows, labels, &gw, &gb);
  double step = 1.0;
  constexpr double kArmijo = 1e-4;
  LinearModel trial = model;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const double gnorm2 = squared_norm(gw.flat()) + squared_norm(gb);
    if (std::sqrt(gnorm2) < options.gradient_tolerance) break;
    step *= 2.0;
    double f_new = 0.0;
    while (true) {
      auto tw = trial.weights.flat();
      const auto w = model.weights.flat();
      const auto g = gw.flat();
      for (std::size_t j = 0; j < tw.size(); ++j) tw[j] = w[j] - step * g[j];
      for (std::size_t c = 0; c < gb.size(); ++c) trial.bias[c] = model.bias[c] - step * gb[c];
      f_new = logreg_objective(trial, rows, labels, nullptr, nullptr);
      if (f_new <= f - kArmijo * step * gnorm2 || step < 1e-20) break;
      step *= 0.5;
    }
    if (step < 1e-20) break;
    std::swap(model, trial);
    const double previous = f;
    f = logreg_objective(model, rows, labels, &gw, &gb);
    if (previous - f <= 1e-15 * std::max(1.0, std::abs(f))) break;
  }
  return model;
}

LambdaSelection select_lambda(std::span<const FeatureRow> rows, std::span<const std::size_t> labels,
                              std::size_t num_features, std::size_t num_classes,
                              std::span<const double> grid, std::size_t inner_folds,
                              std::uint64_t seed, const LogRegOptions& base) {
  if (grid.empty()) throw ValidationError("select_lambda: empty grid");
  const FoldPlan plan = make_folds(labels, num_classes, inner_folds, seed);
  LambdaSelection out;
  out.inner_accuracy.assign(grid.size(), 0.0);
  double best = -1.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    LogRegOptions opts = base;
    opts.l2_lambda = grid[g];
    double total = 0.0;
    for (std::size_t f = 0; f < plan.k(); ++f) {
      std::vector<FeatureRow> fit_rows;
      std::vector<std::size_t> fit_labels;
      for (std::size_t i : plan.train_indices(f)) {
        fit_rows.push_back(rows[i]);
        fit_labels.push_back(labels[i]);
      }
      const LinearModel m = train_logreg(fit_rows, fit_labels, num_features, num_classes, opts);
      std::vector<std::size_t> preds;
      std::vector<std::size_t> truth;
      for (std::size_t i : plan.test_indices(f)) {
        preds.push_back(m.predict(rows[i]));
        truth.push_back(labels[i]);
      }
      total += accuracy(preds, truth);
    }
    out.inner_accuracy[g] = total / static_cast<double>(plan.k());
    if (out.inner_accuracy[g] >= best) {
      best = out.inner_accuracy[g];
      out.lambda = grid[g];
    }
  }
  return out;
}

std::vector<double> run_baseline_cv(const Dataset& dataset, const FoldPlan& plan,
                                    const EmbeddingTable* table, const BaselineOptions& options) {
  if (plan.size() != dataset.size()) {
    throw ValidationError("run_baseline_cv: fold plan does not match the dataset");
  }
  std::vector<double> scores(plan.k(), 0.0);
  parallel_for(plan.k(), options.threads, [&](std::size_t fold) {
    std::vector<std::vector<std::string>> train_tokens;
    std::vector<std::size_t> train_labels;
    for (std::size_t i : plan.train_indices(fold)) {
      train_tokens.push_back(dataset[i].tokens);
      train_labels.push_back(dataset[i].label);
    }
    BowVectorizer vectorizer;
    if (options.mode != FeatureMode::kAvgWordVector) {
      vectorizer = BowVectorizer::fit(train_tokens, options.ngram_cap, options.binary_counts);
    }
    const Featurizer featurizer(options.mode, &vectorizer, table);
    std::vector<FeatureRow> train_rows;
    train_rows.reserve(train_tokens.size());
    for (const auto& t : train_tokens) train_rows.push_back(featurizer.sparse(t));

    const auto choice = select_lambda(train_rows, train_labels, featurizer.width(),
                                      dataset.num_classes(), kLambdaGrid, options.inner_folds,
                                      mix_seed(options.seed, fold));
    LogRegOptions opts;
    opts.l2_lambda = choice.lambda;
    const LinearModel model = train_logreg(train_rows, train_labels, featurizer.width(),
                                           dataset.num_classes(), opts);
    std::vector<std::size_t> preds;
    std::vector<std::size_t> truth;
    for (std::size_t i : plan.test_indices(fold)) {
      preds.push_back(model.predict(featurizer.sparse(dataset[i].tokens)));
      truth.push_back(dataset[i].label);
    }
    scores[fold] = 100.0 * accuracy(preds, truth);
  });
  return scores;
}

}  // namespace sentcnn
