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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include <spdlog/spdlog.h>

#include "sentcnn/kernels.hpp"

namespace sentcnn::kernels {

#if defined(SENTCNN_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(SENTCNN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select_table() noexcept {
  const KernelTable* best = avx2_table();
  if (const char* pin = std::getenv("SENTCNN_SIMD")) {
    const std::string_view want(pin);
    if (want == "scalar") return scalar_table();
    if (want == "avx2" && best == nullptr) {
      spdlog::warn("SENTCNN_SIMD=avx2 requested but unavailable; using scalar");
    }
  }
  return best != nullptr ? *best : scalar_table();
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> table{&select_table()};
  return table;
}

}  // namespace

const KernelTable* avx2_table() noexcept {
#if defined(SENTCNN_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  return *slot().load(std::memory_order_relaxed);
}

void set_active(const KernelTable& table) noexcept {
  slot().store(&table, std::memory_order_relaxed);
}

}  // namespace sentcnn::kernels
