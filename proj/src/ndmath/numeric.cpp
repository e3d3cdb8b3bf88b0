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

#include "sentcnn/numeric.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sentcnn/error.hpp"
#include "sentcnn/kernels.hpp"

namespace sentcnn {

namespace {

void check_bounds(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ValidationError("uniform_fill: bounds must be finite");
  }
  if (!(lo < hi)) {
    throw ValidationError(
        fmt::format("uniform_fill: need lo < hi, got [{}, {})", lo, hi));
  }
}

}  // namespace

void uniform_fill(std::span<double> v, Rng& rng, double lo, double hi) {
  check_bounds(lo, hi);
  for (double& x : v) x = rng.uniform(lo, hi);
}

void uniform_fill(Mat& m, Rng& rng, double lo, double hi) {
  uniform_fill(m.flat(), rng, lo, hi);
}

void softmax_inplace(std::span<double> logits) {
  if (logits.empty()) throw ValidationError("softmax: empty input");
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& x : logits) {
    x = std::exp(x - top);
    total += x;
  }
  for (double& x : logits) x /= total;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.begin(), logits.end());
  softmax_inplace(out);
  return out;
}

double cross_entropy(std::span<const double> probs, std::size_t label) {
  if (label >= probs.size()) {
    throw ValidationError(fmt::format(
        "cross_entropy: label {} out of range for {} classes", label,
        probs.size()));
  }
  return -std::log(std::max(probs[label], kProbabilityFloor));
}

double l2_norm(std::span<const double> v) noexcept {
  return std::sqrt(kernels::dot(v, v));
}

bool constrain_l2_inplace(std::span<double> v, double c) {
  if (!(c > 0.0)) {
    throw ValidationError(
        fmt::format("constrain_l2: threshold must be positive, got {}", c));
  }
  const double norm = l2_norm(v);
  if (!(norm > c)) return false;
  const double scale = c / norm;
  for (double& x : v) x *= scale;
  return true;
}

std::vector<double> constrain_l2(std::span<const double> v, double c) {
  std::vector<double> out(v.begin(), v.end());
  constrain_l2_inplace(out, c);
  return out;
}

}  // namespace sentcnn
