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
#include <span>
#include <string_view>

// Inner-loop kernels used by convolution, its backward pass and the softmax
// layer. Every kernel has a scalar reference implementation; vectorized
// variants are selected once at startup from the CPU's capabilities and can
// be pinned with the SENTCNN_SIMD environment variable ("scalar" or "avx2").

namespace sentcnn::kernels {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n) noexcept;
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y,
               std::size_t n) noexcept;
  // y[i] *= x[i]
  void (*mul)(const double* x, double* y, std::size_t n) noexcept;
};

const KernelTable& scalar_table() noexcept;
// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_table() noexcept;

// The table used by the library. Resolved on first call.
const KernelTable& active() noexcept;
// Overrides the active table (tests and benchmarks). Not thread-safe with
// respect to concurrent kernel calls.
void set_active(const KernelTable& table) noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x,
                 std::span<double> y) noexcept {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void mul(std::span<const double> x, std::span<double> y) noexcept {
  active().mul(x.data(), y.data(), x.size());
}

}  // namespace sentcnn::kernels
