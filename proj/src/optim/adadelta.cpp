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

#include <fmt/format.h>

#include "sentcnn/error.hpp"
#include "sentcnn/optim.hpp"

namespace sentcnn {

void adadelta_step(std::span<double> param, std::span<const double> grad,
                   std::span<double> mean_sq_grad, std::span<double> mean_sq_step,
                   const AdadeltaConfig& config) {
  if (grad.size() != param.size() || mean_sq_grad.size() != param.size() ||
      mean_sq_step.size() != param.size()) {
    throw ValidationError(fmt::format("adadelta_step: shape mismatch (param {}, grad {}, state {})",
                                      param.size(), grad.size(), mean_sq_grad.size()));
  }
  const double rho = config.rho;
  const double eps = config.eps;
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double g = grad[i];
    double& eg2 = mean_sq_grad[i];
    double& edx2 = mean_sq_step[i];
    eg2 = rho * eg2 + (1.0 - rho) * g * g;
    const double dx = -(std::sqrt(edx2 + eps) / std::sqrt(eg2 + eps)) * g;
    edx2 = rho * edx2 + (1.0 - rho) * dx * dx;
    param[i] += dx;
  }
}

void adadelta_step(std::span<double> param, std::span<const double> grad, AdadeltaState& state,
                   const AdadeltaConfig& config) {
  adadelta_step(param, grad, state.mean_sq_grad, state.mean_sq_step, config);
}

SparseRowAdadelta::SparseRowAdadelta(std::size_t rows, std::size_t cols)
    : cols_(cols), mean_sq_grad_(rows, cols), mean_sq_step_(rows, cols), last_step_(rows, 0) {}

void SparseRowAdadelta::step(Mat& table,
                             const std::map<std::int32_t, std::vector<double>>& row_grads,
                             const AdadeltaConfig& config) {
  ++step_;
  for (const auto& [id, grad] : row_grads) {
    if (id < 0 || static_cast<std::size_t>(id) >= table.rows() || grad.size() != cols_) {
      throw ValidationError(fmt::format("embedding gradient row {} does not fit the table", id));
    }
    const auto r = static_cast<std::size_t>(id);
    const std::uint64_t skipped = step_ - last_step_[r] - 1;
    if (skipped > 0 && last_step_[r] > 0) {
      const double decay = std::pow(config.rho, static_cast<double>(skipped));
      for (double& v : mean_sq_grad_.row(r)) v *= decay;
      for (double& v : mean_sq_step_.row(r)) v *= decay;
    }
    last_step_[r] = step_;
    adadelta_step(table.row(r), grad, mean_sq_grad_.row(r), mean_sq_step_.row(r), config);
  }
}

CnnOptimizer::CnnOptimizer(const CnnParams& params, AdadeltaConfig config) : config_(config) {
  for (const auto& t : dense_tensors(params)) dense_.emplace_back(t.size());
  if (params.embedding) embedding_.emplace(params.embedding->rows(), params.embedding->cols());
}

void CnnOptimizer::step(CnnParams& params, const CnnGrads& grads) {
  auto targets = dense_tensors(params);
  const auto sources = dense_tensors(grads);
  if (targets.size() != dense_.size() || sources.size() != dense_.size()) {
    throw ValidationError("CnnOptimizer: gradients do not match the parameters");
  }
  for (std::size_t t = 0; t < targets.size(); ++t) {
    adadelta_step(targets[t], sources[t], dense_[t], config_);
  }
  if (embedding_ && params.embedding) {
    embedding_->step(*params.embedding, grads.embedding_rows, config_);
  }
}

}  // namespace sentcnn
