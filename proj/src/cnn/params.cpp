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

#include <fmt/format.h>

#include "sentcnn/cnn.hpp"
#include "sentcnn/embeddings.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/kernels.hpp"
#include "sentcnn/numeric.hpp"

namespace sentcnn {

namespace {

constexpr double kFilterInitRange = 0.01;

bool finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

bool CnnParams::all_finite() const noexcept {
  for (const auto& t : dense_tensors(*this)) {
    if (!finite(t)) return false;
  }
  return !embedding || embedding->all_finite();
}

CnnParams init_params(const ModelConfig& config, std::size_t dim, std::size_t pad_to, Rng& rng,
                      const Mat* embedding_init) {
  config.validate_for(pad_to);
  if (dim == 0) throw ValidationError("init_params: word vector dimension must be positive");
  CnnParams params;
  params.dim = dim;
  params.pad_to = pad_to;
  params.banks.reserve(config.region_sizes.size());
  for (std::size_t h : config.region_sizes) {
    FilterBank bank;
    bank.region = h;
    bank.weights = Mat(config.maps_per_region, h * dim);
    uniform_fill(bank.weights, rng, -kFilterInitRange, kFilterInitRange);
    bank.bias.assign(config.maps_per_region, 0.0);
    params.banks.push_back(std::move(bank));
  }
  params.softmax_weights = Mat(config.num_classes, config.feature_count(pad_to));
  params.softmax_bias.assign(config.num_classes, 0.0);
  if (config.embedding_mode == EmbeddingMode::kNonStatic) {
    if (embedding_init == nullptr) {
      throw ValidationError("non-static mode needs an initial embedding matrix");
    }
    if (embedding_init->cols() != dim) {
      throw ValidationError(fmt::format("initial embedding has width {}, expected {}",
                                        embedding_init->cols(), dim));
    }
    params.embedding = *embedding_init;
  }
  return params;
}

CnnParams init_params(const ModelConfig& config, const SentenceEncoding& encoding, Rng& rng) {
  if (config.embedding_mode == EmbeddingMode::kNonStatic &&
      encoding.mode() == SentenceEncoding::Mode::kOneHot) {
    throw ValidationError("one-hot inputs are fixed; use the static embedding mode");
  }
  const Mat* init =
      config.embedding_mode == EmbeddingMode::kNonStatic ? &encoding.lookup() : nullptr;
  return init_params(config, encoding.dim(), encoding.pad_to(), rng, init);
}

void apply_constraint(CnnParams& params, double c) {
  for (std::size_t r = 0; r < params.softmax_weights.rows(); ++r) {
    constrain_l2_inplace(params.softmax_weights.row(r), c);
  }
}

Mat input_matrix(const SentenceEncoding& encoding, const CnnParams& params,
                 std::span<const std::int32_t> ids) {
  if (params.embedding) return gather_rows(*params.embedding, ids, encoding.pad_to());
  return encoding.matrix(ids);
}

std::vector<std::span<double>> dense_tensors(CnnParams& params) {
  std::vector<std::span<double>> out;
  for (auto& bank : params.banks) {
    out.emplace_back(bank.weights.flat());
    out.emplace_back(bank.bias);
  }
  out.emplace_back(params.softmax_weights.flat());
  out.emplace_back(params.softmax_bias);
  return out;
}

std::vector<std::span<const double>> dense_tensors(const CnnParams& params) {
  std::vector<std::span<const double>> out;
  for (const auto& bank : params.banks) {
    out.emplace_back(bank.weights.flat());
    out.emplace_back(bank.bias);
  }
  out.emplace_back(params.softmax_weights.flat());
  out.emplace_back(params.softmax_bias);
  return out;
}

std::vector<std::span<double>> dense_tensors(CnnGrads& grads) {
  std::vector<std::span<double>> out;
  for (std::size_t b = 0; b < grads.filters.size(); ++b) {
    out.emplace_back(grads.filters[b].flat());
    out.emplace_back(grads.filter_bias[b]);
  }
  out.emplace_back(grads.softmax_weights.flat());
  out.emplace_back(grads.softmax_bias);
  return out;
}

std::vector<std::span<const double>> dense_tensors(const CnnGrads& grads) {
  std::vector<std::span<const double>> out;
  for (std::size_t b = 0; b < grads.filters.size(); ++b) {
    out.emplace_back(grads.filters[b].flat());
    out.emplace_back(grads.filter_bias[b]);
  }
  out.emplace_back(grads.softmax_weights.flat());
  out.emplace_back(grads.softmax_bias);
  return out;
}

CnnGrads CnnGrads::zeros_like(const CnnParams& params) {
  CnnGrads g;
  for (const auto& bank : params.banks) {
    g.filters.emplace_back(bank.weights.rows(), bank.weights.cols());
    g.filter_bias.emplace_back(bank.bias.size(), 0.0);
  }
  g.softmax_weights = Mat(params.softmax_weights.rows(), params.softmax_weights.cols());
  g.softmax_bias.assign(params.softmax_bias.size(), 0.0);
  return g;
}

void CnnGrads::add(const CnnGrads& other) {
  if (other.filters.size() != filters.size() ||
      other.softmax_weights.size() != softmax_weights.size()) {
    throw ValidationError("CnnGrads::add: shape mismatch");
  }
  auto dst = dense_tensors(*this);
  const auto src = dense_tensors(other);
  for (std::size_t t = 0; t < dst.size(); ++t) kernels::axpy(1.0, src[t], dst[t]);
  for (const auto& [id, row] : other.embedding_rows) {
    auto& target = embedding_rows[id];
    if (target.empty()) {
      target = row;
    } else {
      kernels::axpy(1.0, row, target);
    }
  }
}

void CnnGrads::scale(double factor) {
  for (auto t : dense_tensors(*this)) {
    for (double& x : t) x *= factor;
  }
  for (auto& [id, row] : embedding_rows) {
    for (double& x : row) x *= factor;
  }
}

}  // namespace sentcnn
