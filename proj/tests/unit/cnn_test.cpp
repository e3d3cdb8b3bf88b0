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

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sentcnn/cnn.hpp"
#include "sentcnn/error.hpp"

namespace sentcnn {
namespace {

TEST(ModelConfig, DefaultsMatchBaseline) {
  const ModelConfig c;
  EXPECT_EQ(c.region_sizes, (std::vector<std::size_t>{3, 4, 5}));
  EXPECT_EQ(c.maps_per_region, 100u);
  EXPECT_EQ(c.activation, Activation::kRelu);
  EXPECT_EQ(c.pooling, Pooling::one_max());
  EXPECT_EQ(c.dropout_penult, 0.5);
  EXPECT_EQ(c.l2_constraint, 3.0);
  EXPECT_EQ(c.feature_count(56), 300u);
}

TEST(ModelConfig, Validation) {
  ModelConfig c;
  c.dropout_penult = 1.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.dropout_conv = -0.1;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.region_sizes = {3, 0};
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.maps_per_region = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.l2_constraint = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.pooling = Pooling::k_max(5);
  EXPECT_NO_THROW(c.validate_for(9));   // map lengths 7, 6, 5
  EXPECT_THROW(c.validate_for(8), ValidationError);
  c = {};
  EXPECT_THROW(c.validate_for(4), ValidationError);
}

TEST(ModelConfig, ParseRoundTrips) {
  for (auto a : oracle::all_activations()) EXPECT_EQ(parse_activation(to_string(a)), a);
  for (const auto& p : oracle::all_poolings()) EXPECT_EQ(parse_pooling(to_string(p)), p);
  EXPECT_THROW(parse_activation("gelu"), ValidationError);
  EXPECT_THROW(parse_pooling("k_max"), ValidationError);
  EXPECT_THROW(parse_pooling("k_max:x"), ValidationError);
  EXPECT_EQ(parse_embedding_mode("static"), EmbeddingMode::kStatic);
}

TEST(Activation, Values) {
  EXPECT_EQ(activate(-2.0, Activation::kRelu), 0.0);
  EXPECT_EQ(activate(-2.0, Activation::kIden), -2.0);
  EXPECT_NEAR(activate(0.0, Activation::kSoftplus), 0.693147, 1e-6);
  EXPECT_EQ(activate(2.0, Activation::kCube), 8.0);
  EXPECT_EQ(activate(0.0, Activation::kTanh), 0.0);
  EXPECT_EQ(activate(0.0, Activation::kSigmoid), 0.5);
  EXPECT_NEAR(activate(0.5, Activation::kTanhCube), std::tanh(0.625), 1e-15);
  EXPECT_TRUE(std::isfinite(activate(800.0, Activation::kSoftplus)));
  EXPECT_TRUE(std::isfinite(activate(-800.0, Activation::kSigmoid)));
}

TEST(Activation, GradientsMatchDifferences) {
  Rng rng(5);
  for (auto f : oracle::all_activations()) {
    for (int i = 0; i < 200; ++i) {
      double x = rng.uniform(-3.0, 3.0);
      if (f == Activation::kRelu && std::abs(x) < 1e-3) x = 0.5;
      const double h = 1e-6;
      const double numeric = (activate(x + h, f) - activate(x - h, f)) / (2 * h);
      EXPECT_NEAR(activate_grad(x, f), numeric, 1e-6 * (1.0 + std::abs(numeric)))
          << to_string(f) << " at " << x;
    }
  }
}

TEST(Convolve, WorkedExample) {
  const Mat a(3, 2, std::vector<double>{1, 0, 2, 1, 0, 3});
  const Mat w(2, 2, 1.0);
  EXPECT_EQ(convolve(a, w), (std::vector<double>{4, 6}));
  EXPECT_EQ(convolve(a, Mat(2, 2)), (std::vector<double>{0, 0}));
  EXPECT_EQ(convolve(Mat(7, 4), Mat(3, 4)).size(), 5u);
  EXPECT_THROW(convolve(a, Mat(4, 2)), ValidationError);
  EXPECT_THROW(convolve(a, Mat(2, 3)), ValidationError);
}

TEST(Convolve, MatchesNaiveLoop) {
  Rng rng(10);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + rng.below(20);
    const std::size_t s = 1 + rng.below(30);
    const std::size_t h = 1 + rng.below(s);
    Mat a(s, d);
    Mat w(h, d);
    uniform_fill(a, rng, -1.0, 1.0);
    uniform_fill(w, rng, -1.0, 1.0);
    const auto got = convolve(a, w);
    const auto want = oracle::naive_convolve(a, w);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(Pool, Examples) {
  EXPECT_EQ(pool(std::vector<double>{1, 3, 2}, Pooling::one_max()), (std::vector<double>{3}));
  EXPECT_EQ(pool(std::vector<double>{1, 5, 2, 4, 3}, Pooling::k_max(2)),
            (std::vector<double>{5, 4}));
  EXPECT_EQ(pool(std::vector<double>{1, 3, 2, 9, 0, 5, 4}, Pooling::local_max(3)),
            (std::vector<double>{3, 9, 4}));
  EXPECT_EQ(pool(std::vector<double>{1, 3, 2, 9, 0, 5, 4}, Pooling::local_avg(3)),
            (std::vector<double>{2, 14.0 / 3.0, 4}));
  EXPECT_THROW(pool(std::vector<double>{1, 2}, Pooling::k_max(3)), ValidationError);
  EXPECT_THROW(pool(std::vector<double>{}, Pooling::one_max()), ValidationError);
}

TEST(Pool, TraceRecordsSources) {
  std::vector<std::uint32_t> src;
  pool(std::vector<double>{1, 5, 2, 4, 3}, Pooling::k_max(2), &src);
  EXPECT_EQ(src, (std::vector<std::uint32_t>{1, 3}));
  pool(std::vector<double>{2, 2, 1}, Pooling::one_max(), &src);
  EXPECT_EQ(src, (std::vector<std::uint32_t>{0}));
  pool(std::vector<double>{1, 3, 2, 9, 0, 5, 4}, Pooling::local_avg(3), &src);
  EXPECT_EQ(src, (std::vector<std::uint32_t>{0, 3, 6}));
}

TEST(Pool, MatchesBruteForce) {
  Rng rng(11);
  for (const auto& base : oracle::all_poolings()) {
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 1 + rng.below(64);
      std::vector<double> c(n);
      for (auto& x : c) x = rng.below(4) == 0 ? 0.5 : rng.uniform(-2.0, 2.0);
      Pooling p = base;
      if (p.kind != Pooling::Kind::kOneMax) p.size = 1 + rng.below(n);
      const auto got = pool(c, p);
      const auto want = oracle::naive_pool(c, p);
      ASSERT_EQ(got.size(), want.size());
      ASSERT_EQ(got.size(), p.output_length(n));
      for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-12);
    }
  }
}

TEST(InitParams, ShapesAndZeros) {
  ModelConfig c;
  Rng rng(1);
  EXPECT_THROW(init_params(c, 300, 56, rng), ValidationError);
  c.embedding_mode = EmbeddingMode::kStatic;
  const CnnParams ps = init_params(c, 300, 56, rng);
  EXPECT_EQ(ps.softmax_weights.rows(), 2u);
  EXPECT_EQ(ps.feature_count(), 300u);
  for (const auto& bank : ps.banks) {
    for (double b : bank.bias) EXPECT_EQ(b, 0.0);
    for (double w : bank.weights.flat()) {
      EXPECT_GE(w, -0.01);
      EXPECT_LT(w, 0.01);
    }
  }
  for (double u : ps.softmax_weights.flat()) EXPECT_EQ(u, 0.0);
  for (double b : ps.softmax_bias) EXPECT_EQ(b, 0.0);
  EXPECT_FALSE(ps.embedding.has_value());
  Rng a(7);
  Rng b(7);
  EXPECT_EQ(init_params(c, 300, 56, a), init_params(c, 300, 56, b));
}

TEST(InitParams, DuplicateRegionsAreIndependent) {
  ModelConfig c;
  c.region_sizes = {7, 7, 7, 7};
  c.embedding_mode = EmbeddingMode::kStatic;
  Rng rng(2);
  const CnnParams p = init_params(c, 5, 10, rng);
  ASSERT_EQ(p.banks.size(), 4u);
  EXPECT_NE(p.banks[0].weights, p.banks[1].weights);
  EXPECT_EQ(p.feature_count(), 400u);
}

TEST(InitParams, FigureOneShape) {
  auto model = oracle::make_tiny_model(Activation::kRelu, Pooling::one_max(),
                                       EmbeddingMode::kStatic, 3, 5, 7, {2, 3, 4}, 2);
  EXPECT_EQ(model.params.feature_count(), 6u);
  const Mat a = input_matrix(model.encoding, model.params, model.ids);
  const auto t = forward(a, model.ids, model.params, model.config, nullptr, false);
  EXPECT_EQ(t.penultimate.size(), 6u);
  ASSERT_EQ(t.probs.size(), 2u);
  EXPECT_NEAR(t.probs[0] + t.probs[1], 1.0, 1e-12);
}

TEST(Forward, EvalIsDeterministicAndSumsToOne) {
  Rng rng(3);
  for (const auto& p : oracle::all_poolings()) {
    auto m = oracle::make_tiny_model(Activation::kTanh, p, EmbeddingMode::kNonStatic, rng.next());
    const Mat a = input_matrix(m.encoding, m.params, m.ids);
    Rng unused(1);
    const Rng before = unused;
    const auto t1 = forward(a, m.ids, m.params, m.config, &unused, false);
    const auto t2 = forward(a, m.ids, m.params, m.config, nullptr, false);
    EXPECT_EQ(unused, before);
    EXPECT_EQ(t1.probs, t2.probs);
    EXPECT_NEAR(std::accumulate(t1.probs.begin(), t1.probs.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(Forward, ZeroDropoutTrainEqualsEval) {
  auto m = oracle::make_tiny_model(Activation::kRelu, Pooling::k_max(2), EmbeddingMode::kStatic, 4);
  m.config.dropout_penult = 0.0;
  m.config.dropout_conv = 0.0;
  const Mat a = input_matrix(m.encoding, m.params, m.ids);
  Rng rng(0);
  EXPECT_EQ(forward(a, m.ids, m.params, m.config, &rng, true).probs,
            forward(a, m.ids, m.params, m.config, nullptr, false).probs);
}

TEST(Forward, EvalScalesByRetention) {
  auto m = oracle::make_tiny_model(Activation::kRelu, Pooling::one_max(), EmbeddingMode::kStatic, 5);
  m.config.dropout_penult = 0.3;
  m.config.dropout_conv = 0.0;
  const Mat a = input_matrix(m.encoding, m.params, m.ids);
  const auto dropped = forward(a, m.ids, m.params, m.config, nullptr, false);
  ModelConfig plain = m.config;
  plain.dropout_penult = 0.0;
  CnnParams scaled = m.params;
  for (auto& u : scaled.softmax_weights.flat()) u *= 0.7;
  const auto reference = forward(a, m.ids, scaled, plain, nullptr, false);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(dropped.probs[i], reference.probs[i], 1e-12);
}

TEST(Forward, ConvDropoutEvalScaling) {
  auto m = oracle::make_tiny_model(Activation::kIden, Pooling::local_avg(2),
                                   EmbeddingMode::kStatic, 6);
  m.config.dropout_penult = 0.0;
  m.config.dropout_conv = 0.25;
  const Mat a = input_matrix(m.encoding, m.params, m.ids);
  ModelConfig plain = m.config;
  plain.dropout_conv = 0.0;
  for (auto [scaling, factor] : {std::pair{ConvDropoutScaling::kRetention, 0.75},
                                 std::pair{ConvDropoutScaling::kRate, 0.25}}) {
    m.config.conv_dropout_eval = scaling;
    const auto got = forward(a, m.ids, m.params, m.config, nullptr, false);
    Mat scaled = a;
    for (auto& x : scaled.flat()) x *= factor;
    const auto want = forward(scaled, m.ids, m.params, plain, nullptr, false);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(got.probs[i], want.probs[i], 1e-12);
  }
}

TEST(Forward, TrainDropoutZeroesRoughlyP) {
  auto m = oracle::make_tiny_model(Activation::kRelu, Pooling::one_max(), EmbeddingMode::kStatic,
                                   7, 6, 9, {2, 3}, 200);
  m.config.dropout_penult = 0.5;
  m.config.dropout_conv = 0.0;
  const Mat a = input_matrix(m.encoding, m.params, m.ids);
  Rng rng(8);
  std::size_t zeros = 0;
  std::size_t total = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto t = forward(a, m.ids, m.params, m.config, &rng, true);
    for (double s : t.penultimate_scale) {
      zeros += s == 0.0 ? 1 : 0;
      ++total;
    }
  }
  ASSERT_EQ(total, 20u * 400u);
  EXPECT_NEAR(double(zeros) / double(total), 0.5, 0.03);
}

TEST(Forward, RejectsShapeMismatch) {
  auto m = oracle::make_tiny_model(Activation::kRelu, Pooling::one_max(), EmbeddingMode::kStatic, 1);
  EXPECT_THROW(forward(Mat(8, 6), {}, m.params, m.config, nullptr, false), ValidationError);
  EXPECT_THROW(forward(Mat(9, 5), {}, m.params, m.config, nullptr, false), ValidationError);
}

TEST(Constraint, RescalesRowsOnly) {
  CnnParams p;
  p.softmax_weights = Mat(2, 4, std::vector<double>{3, 4, 0, 0, 0.1, 0.2, 0.3, 0.4});
  p.softmax_bias = {10.0, -10.0};
  const Mat inside_row = p.softmax_weights;
  apply_constraint(p, 3.0);
  EXPECT_NEAR(p.softmax_weights(0, 0), 1.8, 1e-15);
  EXPECT_NEAR(p.softmax_weights(0, 1), 2.4, 1e-15);
  for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(p.softmax_weights(1, c), inside_row(1, c));
  EXPECT_EQ(p.softmax_bias, (std::vector<double>{10.0, -10.0}));
}

}  // namespace
}  // namespace sentcnn
