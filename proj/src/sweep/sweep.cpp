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
#include <map>
#include <set>
#include <thread>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/spdlog.h>

#include "sentcnn/error.hpp"
#include "sentcnn/sweep.hpp"
#include "text_util.hpp"

namespace sentcnn {

namespace {

using detail::format_number;
using detail::iequals;
using detail::trim;

constexpr std::array<std::pair<Axis, std::string_view>, 9> kAxisNames = {{
    {Axis::kRegionSize, "region_size"},
    {Axis::kRegionCombo, "region_combo"},
    {Axis::kFeatureMaps, "feature_maps"},
    {Axis::kActivation, "activation"},
    {Axis::kPooling, "pooling"},
    {Axis::kDropoutPenult, "dropout_penult"},
    {Axis::kDropoutConv, "dropout_conv"},
    {Axis::kL2Constraint, "l2_constraint"},
    {Axis::kInputRepr, "input_repr"},
}};

constexpr std::array<std::string_view, 1> kRegionFields = {"region_sizes"};
constexpr std::array<std::string_view, 1> kMapsFields = {"maps_per_region"};
constexpr std::array<std::string_view, 1> kActivationFields = {"activation"};
constexpr std::array<std::string_view, 1> kPoolingFields = {"pooling"};
constexpr std::array<std::string_view, 2> kDropoutPenultFields = {"dropout_penult",
                                                                  "l2_constraint"};
constexpr std::array<std::string_view, 1> kDropoutConvFields = {"dropout_conv"};
constexpr std::array<std::string_view, 1> kL2Fields = {"l2_constraint"};
constexpr std::array<std::string_view, 2> kInputFields = {"input", "embedding_mode"};

constexpr std::string_view kNone = "None";

std::string canonical_impl(Axis axis, std::string_view v) {
  switch (axis) {
    case Axis::kRegionSize:
    case Axis::kFeatureMaps:
      return fmt::format("{}", detail::parse_u64(v, to_string(axis)));
    case Axis::kRegionCombo:
      return fmt::format("({})", fmt::join(detail::parse_region_list(v, "region_combo"), ","));
    case Axis::kActivation:
      return std::string(to_string(parse_activation(v)));
    case Axis::kPooling:
      return to_string(parse_pooling(v));
    case Axis::kDropoutPenult:
    case Axis::kL2Constraint:
      if (iequals(v, "none")) return std::string(kNone);
      return format_number(detail::parse_double(v, to_string(axis)));
    case Axis::kDropoutConv:
      return format_number(detail::parse_double(v, to_string(axis)));
    case Axis::kInputRepr:
      return std::string(to_string(parse_input_repr(v)));
  }
  throw ValidationError("unknown axis");
}

void apply_value(Axis axis, const std::string& value, ExperimentConfig& config) {
  switch (axis) {
    case Axis::kRegionSize:
      config.model.region_sizes = {static_cast<std::size_t>(detail::parse_u64(value, "region_size"))};
      break;
    case Axis::kRegionCombo:
      config.model.region_sizes = detail::parse_region_list(value, "region_combo");
      break;
    case Axis::kFeatureMaps:
      config.model.maps_per_region = detail::parse_u64(value, "feature_maps");
      break;
    case Axis::kActivation:
      config.model.activation = parse_activation(value);
      break;
    case Axis::kPooling:
      config.model.pooling = parse_pooling(value);
      break;
    case Axis::kDropoutPenult:
      if (value == kNone) {
        config.model.dropout_penult = 0.0;
        config.model.l2_constraint.reset();
      } else {
        config.model.dropout_penult = detail::parse_double(value, "dropout_penult");
      }
      break;
    case Axis::kDropoutConv:
      config.model.dropout_conv = detail::parse_double(value, "dropout_conv");
      break;
    case Axis::kL2Constraint:
      if (value == kNone) {
        config.model.l2_constraint.reset();
      } else {
        config.model.l2_constraint = detail::parse_double(value, "l2_constraint");
      }
      break;
    case Axis::kInputRepr:
      config.input = parse_input_repr(value);
      if (config.input == InputRepr::kOneHot) config.model.embedding_mode = EmbeddingMode::kStatic;
      break;
  }
}

}  // namespace

Axis parse_axis(std::string_view name) {
  for (const auto& [axis, n] : kAxisNames) {
    if (n == name) return axis;
  }
  std::vector<std::string_view> names;
  for (const auto& entry : kAxisNames) names.push_back(entry.second);
  throw ValidationError(
      fmt::format("unknown axis '{}' (expected one of {})", name, fmt::join(names, ", ")));
}

std::string_view to_string(Axis axis) noexcept {
  for (const auto& [a, n] : kAxisNames) {
    if (a == axis) return n;
  }
  return "?";
}

std::span<const std::string_view> axis_fields(Axis axis) noexcept {
  switch (axis) {
    case Axis::kRegionSize:
    case Axis::kRegionCombo: return kRegionFields;
    case Axis::kFeatureMaps: return kMapsFields;
    case Axis::kActivation: return kActivationFields;
    case Axis::kPooling: return kPoolingFields;
    case Axis::kDropoutPenult: return kDropoutPenultFields;
    case Axis::kDropoutConv: return kDropoutConvFields;
    case Axis::kL2Constraint: return kL2Fields;
    case Axis::kInputRepr: return kInputFields;
  }
  return {};
}

void SweepSpec::validate() const {
  if (values.empty()) throw ValidationError("sweep needs at least one axis value");
  if (n_reps < 1) throw ValidationError("sweep needs at least one replication");
}

std::vector<std::string> split_values(std::string_view list) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  const auto flush = [&](std::size_t end) {
    const auto item = trim(list.substr(start, end - start));
    if (item.empty()) throw ValidationError(fmt::format("empty value in list '{}'", list));
    out.emplace_back(item);
  };
  for (std::size_t i = 0; i < list.size(); ++i) {
    const char c = list[i];
    if (c == '(' || c == '[') {
      ++depth;
    } else if (c == ')' || c == ']') {
      if (--depth < 0) throw ValidationError(fmt::format("unbalanced brackets in '{}'", list));
    } else if (c == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  if (depth != 0) throw ValidationError(fmt::format("unbalanced brackets in '{}'", list));
  if (!trim(list).empty()) flush(list.size());
  return out;
}

std::string canonical_value(Axis axis, std::string_view value) {
  value = trim(value);
  try {
    return canonical_impl(axis, value);
  } catch (const ValidationError& e) {
    throw ValidationError(
        fmt::format("{} value '{}' is invalid: {}", to_string(axis), value, e.what()));
  }
}

std::vector<BoundConfig> expand_sweep(const SweepSpec& spec) {
  spec.validate();
  ExperimentConfig base = spec.base;
  base.train.seed = spec.seed;
  base.reps = spec.n_reps;
  std::vector<BoundConfig> out;
  std::set<std::string> seen;
  for (const auto& raw : spec.values) {
    BoundConfig bound{canonical_value(spec.axis, raw), base};
    if (!seen.insert(bound.value).second) {
      throw ValidationError(
          fmt::format("{} value '{}' is listed twice", to_string(spec.axis), bound.value));
    }
    try {
      apply_value(spec.axis, bound.value, bound.config);
      bound.config.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(
          fmt::format("{} value '{}' is invalid: {}", to_string(spec.axis), bound.value, e.what()));
    }
    out.push_back(std::move(bound));
  }
  return out;
}

TrialRun run_trials(std::span<const BoundConfig> configs, Axis axis, std::size_t n_reps,
                    const TrialContext& context) {
  if (context.dataset == nullptr || context.plan == nullptr) {
    throw ValidationError("run_trials needs a dataset and a fold plan");
  }
  const Dataset& dataset = *context.dataset;
  const FoldPlan& plan = *context.plan;
  const std::string axis_name(to_string(axis));

  std::map<std::pair<std::string, std::size_t>, std::set<std::size_t>> done;
  if (context.results_path && std::filesystem::exists(*context.results_path)) {
    for (const auto& row : read_results(*context.results_path)) {
      if (row.dataset == context.dataset_name && row.axis == axis_name) {
        done[{row.value, row.replication}].insert(row.fold);
      }
    }
  }

  TrialRun run;
  for (const auto& bound : configs) {
    std::vector<std::size_t> pending;
    for (std::size_t r = 0; r < n_reps; ++r) {
      const auto it = done.find({bound.value, r});
      if (it != done.end() && it->second.size() >= plan.k()) {
        ++run.skipped;
      } else {
        pending.push_back(r);
      }
    }
    if (pending.empty()) continue;

    std::optional<SentenceEncoding> encoding;
    try {
      encoding = build_encoding(bound.config, dataset, context.store);
      bound.config.model.validate_for(encoding->pad_to());
    } catch (const std::exception& e) {
      spdlog::error("{}={}: {}", axis_name, bound.value, e.what());
      for (std::size_t r : pending) run.failures.push_back({bound.value, r, e.what()});
      continue;
    }

    CvOptions options{bound.config.metric, 1};
    const std::string metric_name(to_string(bound.config.metric));
    const std::size_t wave =
        std::max<std::size_t>(1, std::min(context.threads == 0
                                               ? std::max(1u, std::thread::hardware_concurrency())
                                               : context.threads,
                                           pending.size()));
    for (std::size_t first = 0; first < pending.size(); first += wave) {
      const std::size_t count = std::min(wave, pending.size() - first);
      std::vector<std::optional<CvResult>> results(count);
      std::vector<std::string> errors(count);
      std::vector<std::uint64_t> seeds(count);
      parallel_for(count, wave, [&](std::size_t j) {
        TrainConfig train = bound.config.train;
        train.seed = mix_seed(bound.config.train.seed, pending[first + j]);
        seeds[j] = train.seed;
        try {
          results[j] = run_cv(dataset, plan, *encoding, bound.config.model, train, options);
        } catch (const std::exception& e) {
          errors[j] = e.what();
        }
      });
      for (std::size_t j = 0; j < count; ++j) {
        const std::size_t rep = pending[first + j];
        if (!results[j]) {
          spdlog::error("{}={} replication {}: {}", axis_name, bound.value, rep, errors[j]);
          run.failures.push_back({bound.value, rep, errors[j]});
          continue;
        }
        std::vector<TrialResult> block;
        for (std::size_t f = 0; f < plan.k(); ++f) {
          block.push_back({context.dataset_name, axis_name, bound.value, rep, f, metric_name,
                           results[j]->fold_scores[f], results[j]->fold_seconds[f], seeds[j]});
        }
        if (context.results_path) write_results(block, *context.results_path);
        spdlog::info("{}={} replication {}: {:.2f}", axis_name, bound.value, rep,
                     results[j]->mean);
        run.rows.insert(run.rows.end(), block.begin(), block.end());
      }
    }
  }
  return run;
}

}  // namespace sentcnn
