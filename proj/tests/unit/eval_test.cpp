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
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/eval.hpp"
#include "synthetic.hpp"

namespace sentcnn {
namespace {

using Labels = std::vector<std::size_t>;

TEST(Accuracy, Examples) {
  EXPECT_EQ(accuracy(Labels{0, 1, 1}, Labels{0, 1, 1}), 1.0);
  EXPECT_EQ(accuracy(Labels{0, 1}, Labels{1, 0}), 0.0);
  EXPECT_EQ(accuracy(Labels{0, 1, 1, 0}, Labels{0, 1, 1, 1}), 0.75);
  EXPECT_THROW(accuracy(Labels{0}, Labels{0, 1}), ValidationError);
  EXPECT_THROW(accuracy(Labels{}, Labels{}), ValidationError);
}

TEST(RocAuc, Examples) {
  EXPECT_EQ(roc_auc(std::vector<double>{0.9, 0.8, 0.1, 0.2}, Labels{1, 1, 0, 0}), 1.0);
  EXPECT_EQ(roc_auc(std::vector<double>{0.5, 0.5}, Labels{1, 0}), 0.5);
  EXPECT_EQ(roc_auc(std::vector<double>{0.8, 0.3, 0.5, 0.1}, Labels{1, 1, 0, 0}), 0.75);
  EXPECT_THROW(roc_auc(std::vector<double>{0.1, 0.2}, Labels{1, 1}), ValidationError);
  EXPECT_THROW(roc_auc(std::vector<double>{0.1, 0.2}, Labels{1, 2}), ValidationError);
}

TEST(RocAuc, MatchesPairCountingWithTies) {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.below(80);
    std::vector<double> scores(n);
    Labels labels(n);
    const std::size_t levels = 1 + rng.below(10);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = double(rng.below(levels)) / double(levels);
      labels[i] = rng.below(2);
    }
    labels[0] = 0;
    labels[1] = 1;
    ASSERT_NEAR(roc_auc(scores, labels), oracle::pair_count_auc(scores, labels), 1e-12);
  }
}

TEST(RocAuc, InvariantUnderMonotoneTransform) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + rng.below(40);
    std::vector<double> scores(n);
    Labels labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = double(rng.below(6));
      labels[i] = i < 2 ? i : rng.below(2);
    }
    std::vector<double> moved = scores;
    for (auto& s : moved) s = std::exp(3.0 * s) - 7.0;
    EXPECT_EQ(roc_auc(scores, labels), roc_auc(moved, labels));
  }
}

TEST(PercentChange, Examples) {
  EXPECT_EQ(percent_change(std::vector<double>{80, 82}, 0), (std::vector<double>{0.0, 2.5}));
  EXPECT_EQ(percent_change(std::vector<double>{50, 25}, 0), (std::vector<double>{0.0, -50.0}));
  const auto pc = percent_change(std::vector<double>{81.3, 79.9, 83.7}, 1);
  EXPECT_EQ(pc[1], 0.0);
  EXPECT_THROW(percent_change(std::vector<double>{0.0, 1.0}, 0), ValidationError);
  EXPECT_THROW(percent_change(std::vector<double>{1.0}, 1), ValidationError);
}

TEST(ReplicationReport, Aggregates) {
  const auto r = ReplicationReport::from({81.0, 81.5, 80.9}, Metric::kAccuracy);
  EXPECT_NEAR(r.mean, 81.133333333333333, 1e-12);
  EXPECT_EQ(r.min, 80.9);
  EXPECT_EQ(r.max, 81.5);
  const auto one = ReplicationReport::from({77.7}, Metric::kAuc);
  EXPECT_EQ(one.mean, 77.7);
  EXPECT_EQ(one.min, 77.7);
  EXPECT_EQ(one.max, 77.7);
  EXPECT_THROW(ReplicationReport::from({}, Metric::kAccuracy), ValidationError);
}

TEST(ReplicationReport, PropertyOrderedAndRecomputable) {
  Rng rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(1 + rng.below(12));
    const double centre = rng.uniform(40.0, 95.0);
    for (auto& x : v) x = centre + rng.uniform(-1e-9, 1e-9) * (rng.below(2) ? 1.0 : 1e9);
    const auto r = ReplicationReport::from(v, Metric::kAccuracy);
    EXPECT_LE(r.min, r.mean);
    EXPECT_LE(r.mean, r.max);
    double sum = 0.0;
    for (double x : v) sum += x;
    EXPECT_NEAR(r.mean, sum / double(v.size()), 1e-12 * std::abs(centre));
  }
}

TEST(Metric, Parse) {
  EXPECT_EQ(parse_metric("acc"), Metric::kAccuracy);
  EXPECT_EQ(parse_metric("auc"), Metric::kAuc);
  EXPECT_THROW(parse_metric("f1"), ValidationError);
}

struct CvSetup {
  Dataset data;
  SentenceEncoding encoding;
  ModelConfig model;
  TrainConfig train;
};

CvSetup cv_setup(std::uint64_t seed) {
  Dataset data = synthetic::cue_corpus(40, 0.15, seed);
  const auto vocab = vocabulary(data);
  auto encoding = SentenceEncoding::random(6, vocab, Rng(seed), data.max_len());
  ModelConfig model;
  model.region_sizes = {1, 2};
  model.maps_per_region = 3;
  TrainConfig train;
  train.minibatch = 10;
  train.max_epochs = 4;
  train.patience = 1;
  train.seed = 99;
  return {std::move(data), std::move(encoding), model, train};
}

TEST(RunCv, ChanceLevelForUntrainedModel) {
  const auto s = cv_setup(1);
  Rng rng(0);
  ModelConfig model = s.model;
  model.embedding_mode = EmbeddingMode::kStatic;
  const CnnParams params = init_params(model, s.encoding, rng);
  // Zero softmax weights give uniform probabilities, so class 0 is always
  // predicted and accuracy equals the share of class 0.
  const double share = 100.0 * double(s.data.class_counts()[0]) / double(s.data.size());
  EXPECT_EQ(score_examples(s.encoding, params, model, encode(s.data, s.encoding),
                           Metric::kAccuracy),
            share);
  const Dataset balanced = synthetic::cue_corpus(40, 0.0, 1);
  EXPECT_EQ(score_examples(s.encoding, params, model, encode(balanced, s.encoding),
                           Metric::kAccuracy),
            50.0);
}

TEST(RunCv, FoldCountDeterminismAndThreads) {
  const auto s = cv_setup(2);
  const FoldPlan plan = make_folds(s.data, 4, 3);
  const auto a = run_cv(s.data, plan, s.encoding, s.model, s.train);
  EXPECT_EQ(a.fold_scores.size(), 4u);
  EXPECT_EQ(a.fold_seconds.size(), 4u);
  const auto b = run_cv(s.data, plan, s.encoding, s.model, s.train);
  EXPECT_EQ(a, b);
  const auto c = run_cv(s.data, plan, s.encoding, s.model, s.train, {Metric::kAccuracy, 3});
  EXPECT_EQ(a, c);
  for (double x : a.fold_scores) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 100.0);
  }
  const auto auc = run_cv(s.data, plan, s.encoding, s.model, s.train, {Metric::kAuc, 1});
  for (double x : auc.fold_scores) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 100.0);
  }
}

TEST(RunCv, ErrorsNameTheFold) {
  auto s = cv_setup(3);
  const FoldPlan plan = make_folds(s.data, 4, 3);
  s.model.num_classes = 3;
  try {
    run_cv(s.data, plan, s.encoding, s.model, s.train);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("fold 0"), std::string::npos) << e.what();
  }
  const FoldPlan wrong = make_folds(synthetic::cue_corpus(20, 0.0, 1), 4, 3);
  EXPECT_THROW(run_cv(s.data, wrong, s.encoding, s.model, s.train), ValidationError);
}

TEST(ReplicateCv, SharedFoldsSeedsAndOrder) {
  const auto s = cv_setup(4);
  const FoldPlan plan = make_folds(s.data, 4, 8);
  const FoldPlan copy = plan;
  std::vector<std::size_t> order;
  std::vector<std::uint64_t> seeds;
  std::vector<double> means;
  const auto report = replicate_cv(3, s.data, plan, s.encoding, s.model, s.train,
                                   {Metric::kAccuracy, 2},
                                   [&](std::size_t r, const ReplicationDetail& d) {
                                     order.push_back(r);
                                     seeds.push_back(d.seed);
                                     means.push_back(d.cv.mean);
                                   });
  EXPECT_EQ(order, (std::vector<std::size_t>{0, 1, 2}));
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(seeds[r], mix_seed(s.train.seed, r));
  EXPECT_EQ(report.per_replication, means);
  EXPECT_EQ(plan, copy);
  TrainConfig rep1 = s.train;
  rep1.seed = mix_seed(s.train.seed, 1);
  EXPECT_EQ(run_cv(s.data, plan, s.encoding, s.model, rep1).mean, means[1]);
  EXPECT_EQ(replicate_cv(3, s.data, plan, s.encoding, s.model, s.train), report);
  EXPECT_THROW(replicate_cv(0, s.data, plan, s.encoding, s.model, s.train), ValidationError);
}

TEST(ParallelFor, VisitsEveryIndexAndRethrows) {
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw ValidationError("boom");
                            }),
               ValidationError);
}

}  // namespace
}  // namespace sentcnn
