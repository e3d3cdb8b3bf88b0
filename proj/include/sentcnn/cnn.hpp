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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentcnn/mat.hpp"
#include "sentcnn/rng.hpp"

namespace sentcnn {

class SentenceEncoding;

enum class Activation { kRelu, kTanh, kSigmoid, kSoftplus, kIden, kCube, kTanhCube };

Activation parse_activation(std::string_view name);
std::string_view to_string(Activation f) noexcept;

double activate(double x, Activation f) noexcept;
// Derivative of activate(x, f) with respect to x.
double activate_grad(double x, Activation f) noexcept;

struct Pooling {
  enum class Kind { kOneMax, kKMax, kLocalMax, kLocalAvg };

  Kind kind = Kind::kOneMax;
  // k for k-max pooling, window length for local pooling; unused for 1-max.
  std::size_t size = 1;

  static Pooling one_max() noexcept { return {Kind::kOneMax, 1}; }
  static Pooling k_max(std::size_t k) noexcept { return {Kind::kKMax, k}; }
  static Pooling local_max(std::size_t r) noexcept { return {Kind::kLocalMax, r}; }
  static Pooling local_avg(std::size_t r) noexcept { return {Kind::kLocalAvg, r}; }

  // Number of pooled values produced from a feature map of the given length.
  std::size_t output_length(std::size_t map_length) const noexcept;

  friend bool operator==(const Pooling&, const Pooling&) = default;
};

// "one_max", "k_max:K", "local_max:R", "local_avg:R".
Pooling parse_pooling(std::string_view text);
std::string to_string(const Pooling& p);

enum class EmbeddingMode { kStatic, kNonStatic };
EmbeddingMode parse_embedding_mode(std::string_view name);
std::string_view to_string(EmbeddingMode mode) noexcept;

// How the sentence matrix is scaled at evaluation when convolution-layer
// dropout is active: by the retention probability (1 - p), or by p itself.
enum class ConvDropoutScaling { kRetention, kRate };

struct ModelConfig {
  std::vector<std::size_t> region_sizes{3, 4, 5};
  std::size_t maps_per_region = 100;
  Activation activation = Activation::kRelu;
  Pooling pooling = Pooling::one_max();
  double dropout_penult = 0.5;
  double dropout_conv = 0.0;
  std::optional<double> l2_constraint = 3.0;
  EmbeddingMode embedding_mode = EmbeddingMode::kNonStatic;
  std::size_t num_classes = 2;
  ConvDropoutScaling conv_dropout_eval = ConvDropoutScaling::kRetention;

  // Throws ValidationError describing the first violated constraint.
  void validate() const;
  // Also checks that pooling fits feature maps of a pad_to-row input.
  void validate_for(std::size_t pad_to) const;

  std::size_t max_region() const noexcept;
  // Length of the penultimate feature vector for pad_to-row inputs.
  std::size_t feature_count(std::size_t pad_to) const noexcept;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// --- layer primitives -------------------------------------------------------

// o_i = <W, A[i : i+h-1]> for i = 0 .. s-h. Throws when s < h or widths differ.
std::vector<double> convolve(const Mat& a, const Mat& w);
// Same, with a flattened h*d filter, writing into `out` (length s-h+1).
void convolve_into(const Mat& a, std::span<const double> filter, std::size_t h,
                   std::span<double> out) noexcept;

// Pools one feature map. `source` (optional) receives, per output, the index
// of the selected element (max variants) or the window start (average).
std::vector<double> pool(std::span<const double> c, const Pooling& p,
                         std::vector<std::uint32_t>* source = nullptr);
void pool_into(std::span<const double> c, const Pooling& p, std::span<double> out,
               std::span<std::uint32_t> source);
// Routes pooled-output gradients back onto the feature map (accumulating).
void pool_backward(std::span<const double> grad_out, std::span<const std::uint32_t> source,
                   const Pooling& p, std::span<double> grad_map) noexcept;

// --- parameters -------------------------------------------------------------

// All filters sharing one region size entry of the config. Row m of
// `weights` is the flattened h x d filter of feature map m.
struct FilterBank {
  std::size_t region = 0;
  Mat weights;
  std::vector<double> bias;

  friend bool operator==(const FilterBank&, const FilterBank&) = default;
};

struct CnnParams {
  std::size_t dim = 0;
  std::size_t pad_to = 0;
  std::vector<FilterBank> banks;
  Mat softmax_weights;  // num_classes x F
  std::vector<double> softmax_bias;
  // Trainable word vectors (non-static mode only), one row per vocab id.
  std::optional<Mat> embedding;

  std::size_t feature_count() const noexcept { return softmax_weights.cols(); }
  bool all_finite() const noexcept;

  friend bool operator==(const CnnParams&, const CnnParams&) = default;
};

struct CnnGrads {
  std::vector<Mat> filters;
  std::vector<std::vector<double>> filter_bias;
  Mat softmax_weights;
  std::vector<double> softmax_bias;
  // Gradient rows for the embedding ids that occurred in the input(s).
  std::map<std::int32_t, std::vector<double>> embedding_rows;

  static CnnGrads zeros_like(const CnnParams& params);
  void add(const CnnGrads& other);
  void scale(double factor);
};

// Dense parameter tensors in a fixed order (per bank: weights then bias;
// then softmax weights and bias). Embedding rows are not included.
std::vector<std::span<double>> dense_tensors(CnnParams& params);
std::vector<std::span<const double>> dense_tensors(const CnnParams& params);
std::vector<std::span<double>> dense_tensors(CnnGrads& grads);
std::vector<std::span<const double>> dense_tensors(const CnnGrads& grads);

// Filters uniform on [-0.01, 0.01); all biases and softmax weights zero. In
// non-static mode `embedding_init` is copied into params.embedding.
CnnParams init_params(const ModelConfig& config, std::size_t dim, std::size_t pad_to,
                      Rng& rng, const Mat* embedding_init = nullptr);

// Convenience: init_params with dimensions and initial embedding taken from
// the encoding.
CnnParams init_params(const ModelConfig& config, const SentenceEncoding& encoding, Rng& rng);

// Rescales every softmax weight row onto the l2 ball of radius c.
void apply_constraint(CnnParams& params, double c);

// --- forward / backward -----------------------------------------------------

struct ForwardTrace {
  Mat input;                        // sentence matrix as seen by the filters
  std::vector<double> input_scale;  // conv-dropout multipliers; empty = none
  std::vector<std::int32_t> ids;
  std::vector<Mat> pre_activation;  // per bank: maps x map_length, o + b
  std::vector<std::uint32_t> pool_source;
  std::vector<double> penultimate;        // pooled features
  std::vector<double> penultimate_scale;  // dropout multipliers; empty = none
  std::vector<double> probs;
};

// Runs the network on a pad_to x dim sentence matrix. In training mode the
// dropout masks are drawn from `rng` (required when a dropout rate is
// positive); evaluation mode never touches `rng`. `ids` is recorded for the
// embedding gradient in non-static mode and may be empty otherwise.
ForwardTrace forward(const Mat& a, std::span<const std::int32_t> ids, const CnnParams& params,
                     const ModelConfig& config, Rng* rng, bool train);

// Class probabilities in evaluation mode.
std::vector<double> predict(const Mat& a, const CnnParams& params, const ModelConfig& config);

// Exact gradient of -log p(label) for the recorded forward pass.
CnnGrads backward(const ForwardTrace& trace, const CnnParams& params, const ModelConfig& config,
                  std::size_t label);
// Adds the gradient of one example into `into` (shaped like zeros_like).
void backward_accumulate(const ForwardTrace& trace, const CnnParams& params,
                         const ModelConfig& config, std::size_t label, CnnGrads& into);

// Sentence matrix for ids: gathered from params.embedding in non-static mode,
// from the encoding otherwise.
Mat input_matrix(const SentenceEncoding& encoding, const CnnParams& params,
                 std::span<const std::int32_t> ids);

}  // namespace sentcnn
