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
#include <vector>

#include "sentcnn/mat.hpp"
#include "sentcnn/rng.hpp"

namespace sentcnn {

// Fills every entry of m i.i.d. uniform on [lo, hi). Throws ValidationError
// for non-finite bounds or lo >= hi.
void uniform_fill(Mat& m, Rng& rng, double lo, double hi);
void uniform_fill(std::span<double> v, Rng& rng, double lo, double hi);

// Numerically stable softmax (max-subtracted).
std::vector<double> softmax(std::span<const double> logits);
void softmax_inplace(std::span<double> logits);

// Smallest probability fed to the logarithm in cross_entropy.
inline constexpr double kProbabilityFloor = 1e-12;

// -ln(max(probs[label], 1e-12)).
double cross_entropy(std::span<const double> probs, std::size_t label);

double l2_norm(std::span<const double> v) noexcept;

// Rescales v onto the l2 ball of radius c when its norm exceeds c. Inputs
// already inside the ball are returned bit-identical.
std::vector<double> constrain_l2(std::span<const double> v, double c);
// In-place variant; returns true when v was rescaled.
bool constrain_l2_inplace(std::span<double> v, double c);

}  // namespace sentcnn
