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
#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "sentcnn/cnn.hpp"
#include "sentcnn/error.hpp"

namespace sentcnn {

namespace {

constexpr std::array<std::pair<std::string_view, Activation>, 7> kActivations = {{
    {"relu", Activation::kRelu},
    {"tanh", Activation::kTanh},
    {"sigmoid", Activation::kSigmoid},
    {"softplus", Activation::kSoftplus},
    {"iden", Activation::kIden},
    {"cube", Activation::kCube},
    {"tanh_cube", Activation::kTanhCube},
}};

std::size_t parse_size(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw ValidationError(fmt::format("{}: '{}' is not a non-negative integer", what, text));
  }
  return value;
}

void check_rate(double p, std::string_view name) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ValidationError(fmt::format("{} must be in [0, 1), got {}", name, p));
  }
}

}  // namespace

Activation parse_activation(std::string_view name) {
  for (const auto& [key, value] : kActivations) {
    if (key == name) return value;
  }
  throw ValidationError(fmt::format("unknown activation '{}'", name));
}

std::string_view to_string(Activation f) noexcept {
  for (const auto& [key, value] : kActivations) {
    if (value == f) return key;
  }
  return "?";
}

std::size_t Pooling::output_length(std::size_t map_length) const noexcept {
  switch (kind) {
    case Kind::kOneMax: return 1;
    case Kind::kKMax: return size;
    case Kind::kLocalMax:
    case Kind::kLocalAvg: return (map_length + size - 1) / size;
  }
  return 0;
}

Pooling parse_pooling(std::string_view text) {
  const std::size_t colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  if (head == "one_max") {
    if (colon != std::string_view::npos) {
      throw ValidationError(fmt::format("pooling '{}': one_max takes no size", text));
    }
    return Pooling::one_max();
  }
  if (colon == std::string_view::npos) {
    throw ValidationError(fmt::format(
        "pooling '{}': expected one_max, k_max:K, local_max:R or local_avg:R", text));
  }
  const std::size_t n = parse_size(text.substr(colon + 1), "pooling size");
  if (head == "k_max") return Pooling::k_max(n);
  if (head == "local_max") return Pooling::local_max(n);
  if (head == "local_avg") return Pooling::local_avg(n);
  throw ValidationError(fmt::format("unknown pooling '{}'", text));
}

std::string to_string(const Pooling& p) {
  switch (p.kind) {
    case Pooling::Kind::kOneMax: return "one_max";
    case Pooling::Kind::kKMax: return fmt::format("k_max:{}", p.size);
    case Pooling::Kind::kLocalMax: return fmt::format("local_max:{}", p.size);
    case Pooling::Kind::kLocalAvg: return fmt::format("local_avg:{}", p.size);
  }
  return "?";
}

EmbeddingMode parse_embedding_mode(std::string_view name) {
  if (name == "static") return EmbeddingMode::kStatic;
  if (name == "non_static") return EmbeddingMode::kNonStatic;
  throw ValidationError(fmt::format("unknown embedding mode '{}'", name));
}

std::string_view to_string(EmbeddingMode mode) noexcept {
  return mode == EmbeddingMode::kStatic ? "static" : "non_static";
}

void ModelConfig::validate() const {
  if (region_sizes.empty()) throw ValidationError("at least one filter region size is required");
  for (std::size_t h : region_sizes) {
    if (h < 1) throw ValidationError(fmt::format("region size must be >= 1, got {}", h));
  }
  if (maps_per_region < 1) {
    throw ValidationError(fmt::format("feature maps per region must be >= 1, got {}",
                                      maps_per_region));
  }
  if (pooling.kind != Pooling::Kind::kOneMax && pooling.size < 1) {
    throw ValidationError(fmt::format("pooling size must be >= 1 ({})", to_string(pooling)));
  }
  check_rate(dropout_penult, "penultimate dropout rate");
  check_rate(dropout_conv, "convolution dropout rate");
  if (l2_constraint && !(*l2_constraint > 0.0 && std::isfinite(*l2_constraint))) {
    throw ValidationError(fmt::format("l2 constraint must be positive, got {}", *l2_constraint));
  }
  if (num_classes < 2) {
    throw ValidationError(fmt::format("need at least 2 classes, got {}", num_classes));
  }
}

void ModelConfig::validate_for(std::size_t pad_to) const {
  validate();
  for (std::size_t h : region_sizes) {
    if (h > pad_to) {
      throw ValidationError(
          fmt::format("region size {} exceeds the padded sentence length {}", h, pad_to));
    }
    const std::size_t length = pad_to - h + 1;
    if (pooling.kind == Pooling::Kind::kKMax && pooling.size > length) {
      throw ValidationError(fmt::format("k_max k={} exceeds feature map length {} (region {})",
                                        pooling.size, length, h));
    }
  }
}

std::size_t ModelConfig::max_region() const noexcept {
  return region_sizes.empty() ? 0 : *std::max_element(region_sizes.begin(), region_sizes.end());
}

std::size_t ModelConfig::feature_count(std::size_t pad_to) const noexcept {
  std::size_t total = 0;
  for (std::size_t h : region_sizes) {
    if (h > pad_to) continue;
    total += maps_per_region * pooling.output_length(pad_to - h + 1);
  }
  return total;
}

}  // namespace sentcnn
