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

#include "sentcnn/cnn.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/kernels.hpp"
#include "sentcnn/numeric.hpp"

namespace sentcnn {

namespace {

void check_shapes(const Mat& a, const CnnParams& params, const ModelConfig& config) {
  if (a.rows() != params.pad_to || a.cols() != params.dim) {
    throw ValidationError(fmt::format("forward: input is {}x{}, model expects {}x{}", a.rows(),
                                      a.cols(), params.pad_to, params.dim));
  }
  if (params.banks.size() != config.region_sizes.size()) {
    throw ValidationError("forward: parameters do not match the configured region sizes");
  }
  for (std::size_t b = 0; b < params.banks.size(); ++b) {
    const auto& bank = params.banks[b];
    if (bank.region != config.region_sizes[b] || bank.weights.rows() != config.maps_per_region ||
        bank.weights.cols() != bank.region * params.dim) {
      throw ValidationError(fmt::format("forward: filter bank {} does not match the config", b));
    }
  }
  if (params.softmax_weights.rows() != config.num_classes ||
      params.softmax_weights.cols() != config.feature_count(params.pad_to)) {
    throw ValidationError("forward: softmax layer does not match the config");
  }
}

// Multipliers for one dropout site: a 0/1 mask when training, a constant
// retention factor otherwise. Empty when the rate is zero.
std::vector<double> dropout_scale(std::size_t n, double rate, double eval_factor, Rng* rng,
                                  bool train) {
  if (rate <= 0.0) return {};
  if (!train) return std::vector<double>(n, eval_factor);
  if (rng == nullptr) throw ValidationError("forward: training with dropout needs an Rng");
  std::vector<double> mask(n);
  const double keep = 1.0 - rate;
  for (double& m : mask) m = rng->bernoulli(keep) ? 1.0 : 0.0;
  return mask;
}

}  // namespace

ForwardTrace forward(const Mat& a, std::span<const std::int32_t> ids, const CnnParams& params,
                     const ModelConfig& config, Rng* rng, bool train) {
  check_shapes(a, params, config);
  const auto& k = kernels::active();
  ForwardTrace t;
  t.ids.assign(ids.begin(), ids.end());

  t.input = a;
  const double conv_eval = config.conv_dropout_eval == ConvDropoutScaling::kRetention
                               ? 1.0 - config.dropout_conv
                               : config.dropout_conv;
  t.input_scale = dropout_scale(a.size(), config.dropout_conv, conv_eval, rng, train);
  if (!t.input_scale.empty()) k.mul(t.input_scale.data(), t.input.data(), t.input.size());

  const std::size_t features = params.feature_count();
  t.penultimate.resize(features);
  t.pool_source.resize(features);
  t.pre_activation.reserve(params.banks.size());
  std::vector<double> activated;
  std::size_t offset = 0;
  for (const auto& bank : params.banks) {
    const std::size_t length = params.pad_to - bank.region + 1;
    const std::size_t pooled = config.pooling.output_length(length);
    Mat pre(bank.weights.rows(), length);
    activated.resize(length);
    for (std::size_t m = 0; m < bank.weights.rows(); ++m) {
      auto o = pre.row(m);
      convolve_into(t.input, bank.weights.row(m), bank.region, o);
      for (std::size_t i = 0; i < length; ++i) {
        o[i] += bank.bias[m];
        activated[i] = activate(o[i], config.activation);
      }
      pool_into(activated, config.pooling,
                std::span<double>(t.penultimate).subspan(offset, pooled),
                std::span<std::uint32_t>(t.pool_source).subspan(offset, pooled));
      offset += pooled;
    }
    t.pre_activation.push_back(std::move(pre));
  }

  t.penultimate_scale =
      dropout_scale(features, config.dropout_penult, 1.0 - config.dropout_penult, rng, train);
  std::vector<double> z = t.penultimate;
  if (!t.penultimate_scale.empty()) k.mul(t.penultimate_scale.data(), z.data(), z.size());

  t.probs.resize(config.num_classes);
  for (std::size_t c = 0; c < config.num_classes; ++c) {
    t.probs[c] = k.dot(params.softmax_weights.row(c).data(), z.data(), z.size()) +
                 params.softmax_bias[c];
  }
  softmax_inplace(t.probs);
  return t;
}

std::vector<double> predict(const Mat& a, const CnnParams& params, const ModelConfig& config) {
  return forward(a, {}, params, config, nullptr, false).probs;
}

CnnGrads backward(const ForwardTrace& trace, const CnnParams& params, const ModelConfig& config,
                  std::size_t label) {
  CnnGrads g = CnnGrads::zeros_like(params);
  backward_accumulate(trace, params, config, label, g);
  return g;
}

void backward_accumulate(const ForwardTrace& trace, const CnnParams& params,
                         const ModelConfig& config, std::size_t label, CnnGrads& g) {
  if (label >= config.num_classes) {
    throw ValidationError(fmt::format("backward: label {} out of range", label));
  }
  if (trace.probs.size() != config.num_classes ||
      trace.pre_activation.size() != params.banks.size() ||
      trace.penultimate.size() != params.feature_count() ||
      trace.input.rows() != params.pad_to || trace.input.cols() != params.dim) {
    throw ValidationError("backward: trace does not come from a matching forward pass");
  }
  if (g.filters.size() != params.banks.size() ||
      g.softmax_weights.size() != params.softmax_weights.size()) {
    throw ValidationError("backward: gradient buffer does not match the parameters");
  }
  const auto& k = kernels::active();
  const std::size_t features = params.feature_count();

  std::vector<double> z = trace.penultimate;
  if (!trace.penultimate_scale.empty()) {
    k.mul(trace.penultimate_scale.data(), z.data(), z.size());
  }

  // d(-log p_y)/d logits = p - e_y.
  std::vector<double> dz(features, 0.0);
  for (std::size_t c = 0; c < config.num_classes; ++c) {
    const double dlogit = trace.probs[c] - (c == label ? 1.0 : 0.0);
    g.softmax_bias[c] += dlogit;
    k.axpy(dlogit, z.data(), g.softmax_weights.row(c).data(), features);
    k.axpy(dlogit, params.softmax_weights.row(c).data(), dz.data(), features);
  }
  if (!trace.penultimate_scale.empty()) {
    k.mul(trace.penultimate_scale.data(), dz.data(), dz.size());
  }

  const bool need_input_grad = params.embedding.has_value();
  Mat d_input;
  if (need_input_grad) d_input = Mat(params.pad_to, params.dim);

  std::vector<double> d_map;
  std::size_t offset = 0;
  for (std::size_t b = 0; b < params.banks.size(); ++b) {
    const auto& bank = params.banks[b];
    const Mat& pre = trace.pre_activation[b];
    const std::size_t length = pre.cols();
    const std::size_t pooled = config.pooling.output_length(length);
    const std::size_t width = bank.region * params.dim;
    for (std::size_t m = 0; m < bank.weights.rows(); ++m) {
      d_map.assign(length, 0.0);
      pool_backward(std::span<const double>(dz).subspan(offset, pooled),
                    std::span<const std::uint32_t>(trace.pool_source).subspan(offset, pooled),
                    config.pooling, d_map);
      offset += pooled;
      const auto o = pre.row(m);
      double* dw = g.filters[b].row(m).data();
      const double* w = bank.weights.row(m).data();
      double db = 0.0;
      for (std::size_t i = 0; i < length; ++i) {
        if (d_map[i] == 0.0) continue;
        const double d_o = d_map[i] * activate_grad(o[i], config.activation);
        db += d_o;
        k.axpy(d_o, trace.input.data() + i * params.dim, dw, width);
        if (need_input_grad) k.axpy(d_o, w, d_input.data() + i * params.dim, width);
      }
      g.filter_bias[b][m] += db;
    }
  }

  if (need_input_grad) {
    if (!trace.input_scale.empty()) {
      k.mul(trace.input_scale.data(), d_input.data(), d_input.size());
    }
    for (std::size_t r = 0; r < trace.ids.size() && r < params.pad_to; ++r) {
      const std::int32_t id = trace.ids[r];
      if (id < 0) continue;
      auto& row = g.embedding_rows[id];
      if (row.empty()) row.assign(params.dim, 0.0);
      k.axpy(1.0, d_input.row(r).data(), row.data(), params.dim);
    }
  }
}

}  // namespace sentcnn
