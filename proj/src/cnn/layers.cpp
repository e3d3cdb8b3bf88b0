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

#include "sentcnn/cnn.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/kernels.hpp"

namespace sentcnn {

namespace {

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double activate(double x, Activation f) noexcept {
  switch (f) {
    case Activation::kRelu: return x > 0.0 ? x : 0.0;
    case Activation::kTanh: return std::tanh(x);
    case Activation::kSigmoid: return sigmoid(x);
    case Activation::kSoftplus:
      return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
    case Activation::kIden: return x;
    case Activation::kCube: return x * x * x;
    case Activation::kTanhCube: return std::tanh(x * x * x + x);
  }
  return x;
}

double activate_grad(double x, Activation f) noexcept {
  switch (f) {
    case Activation::kRelu: return x > 0.0 ? 1.0 : 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::kSigmoid: {
      const double s = sigmoid(x);
      return s * (1.0 - s);
    }
    case Activation::kSoftplus: return sigmoid(x);
    case Activation::kIden: return 1.0;
    case Activation::kCube: return 3.0 * x * x;
    case Activation::kTanhCube: {
      const double t = std::tanh(x * x * x + x);
      return (1.0 - t * t) * (3.0 * x * x + 1.0);
    }
  }
  return 1.0;
}

void convolve_into(const Mat& a, std::span<const double> filter, std::size_t h,
                   std::span<double> out) noexcept {
  // Rows i..i+h-1 of a row-major matrix are one contiguous block, so each
  // output is a single dot product of length h*d.
  const auto& k = kernels::active();
  const std::size_t width = h * a.cols();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = k.dot(a.data() + i * a.cols(), filter.data(), width);
  }
}

std::vector<double> convolve(const Mat& a, const Mat& w) {
  if (w.cols() != a.cols()) {
    throw ValidationError(fmt::format("convolve: filter width {} != sentence width {}",
                                      w.cols(), a.cols()));
  }
  if (w.rows() == 0 || a.rows() < w.rows()) {
    throw ValidationError(fmt::format("convolve: {} sentence rows cannot fit a region of {}",
                                      a.rows(), w.rows()));
  }
  std::vector<double> out(a.rows() - w.rows() + 1);
  convolve_into(a, w.flat(), w.rows(), out);
  return out;
}

void pool_into(std::span<const double> c, const Pooling& p, std::span<double> out,
               std::span<std::uint32_t> source) {
  const std::size_t n = c.size();
  switch (p.kind) {
    case Pooling::Kind::kOneMax: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i) {
        if (c[i] > c[best]) best = i;
      }
      out[0] = c[best];
      source[0] = static_cast<std::uint32_t>(best);
      return;
    }
    case Pooling::Kind::kKMax: {
      std::vector<std::uint32_t> order(n);
      std::iota(order.begin(), order.end(), 0u);
      // Largest values first; earlier positions win ties.
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p.size),
                        order.end(), [&](std::uint32_t x, std::uint32_t y) {
                          return c[x] > c[y] || (c[x] == c[y] && x < y);
                        });
      std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p.size));
      for (std::size_t j = 0; j < p.size; ++j) {
        out[j] = c[order[j]];
        source[j] = order[j];
      }
      return;
    }
    case Pooling::Kind::kLocalMax:
    case Pooling::Kind::kLocalAvg: {
      std::size_t j = 0;
      for (std::size_t start = 0; start < n; start += p.size, ++j) {
        const std::size_t stop = std::min(n, start + p.size);
        if (p.kind == Pooling::Kind::kLocalMax) {
          std::size_t best = start;
          for (std::size_t i = start + 1; i < stop; ++i) {
            if (c[i] > c[best]) best = i;
          }
          out[j] = c[best];
          source[j] = static_cast<std::uint32_t>(best);
        } else {
          double sum = 0.0;
          for (std::size_t i = start; i < stop; ++i) sum += c[i];
          out[j] = sum / static_cast<double>(stop - start);
          source[j] = static_cast<std::uint32_t>(start);
        }
      }
      return;
    }
  }
}

std::vector<double> pool(std::span<const double> c, const Pooling& p,
                         std::vector<std::uint32_t>* source) {
  if (c.empty()) throw ValidationError("pool: empty feature map");
  if (p.kind != Pooling::Kind::kOneMax && p.size == 0) {
    throw ValidationError("pool: size must be positive");
  }
  if (p.kind == Pooling::Kind::kKMax && p.size > c.size()) {
    throw ValidationError(
        fmt::format("pool: k={} exceeds feature map length {}", p.size, c.size()));
  }
  const std::size_t m = p.output_length(c.size());
  std::vector<double> out(m);
  std::vector<std::uint32_t> idx(m);
  pool_into(c, p, out, idx);
  if (source != nullptr) *source = std::move(idx);
  return out;
}

void pool_backward(std::span<const double> grad_out, std::span<const std::uint32_t> source,
                   const Pooling& p, std::span<double> grad_map) noexcept {
  if (p.kind != Pooling::Kind::kLocalAvg) {
    for (std::size_t j = 0; j < grad_out.size(); ++j) grad_map[source[j]] += grad_out[j];
    return;
  }
  const std::size_t n = grad_map.size();
  for (std::size_t j = 0; j < grad_out.size(); ++j) {
    const std::size_t start = source[j];
    const std::size_t stop = std::min(n, start + p.size);
    const double share = grad_out[j] / static_cast<double>(stop - start);
    for (std::size_t i = start; i < stop; ++i) grad_map[i] += share;
  }
}

}  // namespace sentcnn
