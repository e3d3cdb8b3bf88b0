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
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sentcnn/error.hpp"
#include "sentcnn/sweep.hpp"
#include "text_util.hpp"

namespace sentcnn {

namespace {

using detail::format_number;
using detail::parse_double;
using detail::parse_region_list;
using detail::parse_u64;
using detail::trim;

bool parse_bool(std::string_view text, std::string_view what) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ValidationError(fmt::format("{}: '{}' is not a boolean", what, text));
}

std::string_view to_string(ConvDropoutScaling s) noexcept {
  return s == ConvDropoutScaling::kRetention ? "retention" : "rate";
}

ConvDropoutScaling parse_conv_scaling(std::string_view text) {
  if (text == "retention") return ConvDropoutScaling::kRetention;
  if (text == "rate") return ConvDropoutScaling::kRate;
  throw ValidationError(
      fmt::format("conv_dropout_eval: '{}' (expected retention or rate)", text));
}

struct KeyEntry {
  std::string_view name;
  std::string_view help;
  std::string (*get)(const ExperimentConfig&);
  void (*set)(ExperimentConfig&, std::string_view);
};

constexpr std::array<KeyEntry, 25> kKeys = {{
    {"region_sizes", "filter region sizes, one bank each, e.g. 3,4,5",
     [](const ExperimentConfig& c) { return fmt::format("{}", fmt::join(c.model.region_sizes, ",")); },
     [](ExperimentConfig& c, std::string_view v) {
       c.model.region_sizes = parse_region_list(v, "region_sizes");
     }},
    {"maps_per_region", "feature maps per region size",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.model.maps_per_region); },
     [](ExperimentConfig& c, std::string_view v) {
       c.model.maps_per_region = parse_u64(v, "maps_per_region");
     }},
    {"activation", "relu, tanh, sigmoid, softplus, iden, cube or tanh_cube",
     [](const ExperimentConfig& c) { return std::string(to_string(c.model.activation)); },
     [](ExperimentConfig& c, std::string_view v) { c.model.activation = parse_activation(v); }},
    {"pooling", "one_max, k_max:K, local_max:R or local_avg:R",
     [](const ExperimentConfig& c) { return to_string(c.model.pooling); },
     [](ExperimentConfig& c, std::string_view v) { c.model.pooling = parse_pooling(v); }},
    {"dropout_penult", "dropout rate on the penultimate layer",
     [](const ExperimentConfig& c) { return format_number(c.model.dropout_penult); },
     [](ExperimentConfig& c, std::string_view v) {
       c.model.dropout_penult = parse_double(v, "dropout_penult");
     }},
    {"dropout_conv", "dropout rate on the sentence matrix",
     [](const ExperimentConfig& c) { return format_number(c.model.dropout_conv); },
     [](ExperimentConfig& c, std::string_view v) {
       c.model.dropout_conv = parse_double(v, "dropout_conv");
     }},
    {"l2_constraint", "max l2 norm of each softmax weight row, or none",
     [](const ExperimentConfig& c) {
       return c.model.l2_constraint ? format_number(*c.model.l2_constraint) : std::string("none");
     },
     [](ExperimentConfig& c, std::string_view v) {
       if (detail::iequals(trim(v), "none")) {
         c.model.l2_constraint.reset();
       } else {
         c.model.l2_constraint = parse_double(v, "l2_constraint");
       }
     }},
    {"embedding_mode", "static or non_static",
     [](const ExperimentConfig& c) { return std::string(to_string(c.model.embedding_mode)); },
     [](ExperimentConfig& c, std::string_view v) {
       c.model.embedding_mode = parse_embedding_mode(v);
     }},
    {"conv_dropout_eval", "evaluation scaling for dropout_conv: retention or rate",
     [](const ExperimentConfig& c) { return std::string(to_string(c.model.conv_dropout_eval)); },
     [](ExperimentConfig& c, std::string_view v) {
       c.model.conv_dropout_eval = parse_conv_scaling(v);
     }},
    {"num_classes", "output classes; replaced by the dataset's class count",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.model.num_classes); },
     [](ExperimentConfig& c, std::string_view v) {
       c.model.num_classes = parse_u64(v, "num_classes");
     }},
    {"minibatch", "minibatch size",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.train.minibatch); },
     [](ExperimentConfig& c, std::string_view v) { c.train.minibatch = parse_u64(v, "minibatch"); }},
    {"max_epochs", "upper bound on training epochs",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.train.max_epochs); },
     [](ExperimentConfig& c, std::string_view v) {
       c.train.max_epochs = parse_u64(v, "max_epochs");
     }},
    {"patience", "epochs without validation improvement before stopping",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.train.patience); },
     [](ExperimentConfig& c, std::string_view v) { c.train.patience = parse_u64(v, "patience"); }},
    {"val_fraction", "share of each training split held out for early stopping",
     [](const ExperimentConfig& c) { return format_number(c.train.val_fraction); },
     [](ExperimentConfig& c, std::string_view v) {
       c.train.val_fraction = parse_double(v, "val_fraction");
     }},
    {"seed", "base training seed",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.train.seed); },
     [](ExperimentConfig& c, std::string_view v) { c.train.seed = parse_u64(v, "seed"); }},
    {"rho", "ADADELTA decay",
     [](const ExperimentConfig& c) { return format_number(c.train.adadelta.rho); },
     [](ExperimentConfig& c, std::string_view v) {
       c.train.adadelta.rho = parse_double(v, "rho");
     }},
    {"eps", "ADADELTA epsilon",
     [](const ExperimentConfig& c) { return format_number(c.train.adadelta.eps); },
     [](ExperimentConfig& c, std::string_view v) {
       c.train.adadelta.eps = parse_double(v, "eps");
     }},
    {"input", "word2vec, glove, concat, onehot or random",
     [](const ExperimentConfig& c) { return std::string(to_string(c.input)); },
     [](ExperimentConfig& c, std::string_view v) { c.input = parse_input_repr(v); }},
    {"random_dim", "vector width for random input",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.random_dim); },
     [](ExperimentConfig& c, std::string_view v) {
       c.random_dim = parse_u64(v, "random_dim");
     }},
    {"embedding_seed", "seed for random and out-of-vocabulary vectors",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.embedding_seed); },
     [](ExperimentConfig& c, std::string_view v) {
       c.embedding_seed = parse_u64(v, "embedding_seed");
     }},
    {"folds", "cross-validation folds",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.folds); },
     [](ExperimentConfig& c, std::string_view v) { c.folds = parse_u64(v, "folds"); }},
    {"fold_seed", "seed of the fold assignment",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.fold_seed); },
     [](ExperimentConfig& c, std::string_view v) { c.fold_seed = parse_u64(v, "fold_seed"); }},
    {"reps", "cross-validation replications",
     [](const ExperimentConfig& c) { return fmt::format("{}", c.reps); },
     [](ExperimentConfig& c, std::string_view v) { c.reps = parse_u64(v, "reps"); }},
    {"metric", "accuracy or auc",
     [](const ExperimentConfig& c) { return std::string(to_string(c.metric)); },
     [](ExperimentConfig& c, std::string_view v) { c.metric = parse_metric(v); }},
    {"balance", "under-sample every class to the smallest one (true/false)",
     [](const ExperimentConfig& c) { return std::string(c.balance ? "true" : "false"); },
     [](ExperimentConfig& c, std::string_view v) { c.balance = parse_bool(v, "balance"); }},
}};

const KeyEntry* find_key(std::string_view name) {
  for (const auto& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::array<ConfigKey, kKeys.size() + 1> make_key_docs() {
  std::array<ConfigKey, kKeys.size() + 1> out{};
  for (std::size_t i = 0; i < kKeys.size(); ++i) out[i] = {kKeys[i].name, kKeys[i].help};
  out.back() = {"threads", "worker threads, 0 for all processors"};
  return out;
}

}  // namespace

InputRepr parse_input_repr(std::string_view name) {
  if (name == "word2vec") return InputRepr::kWord2Vec;
  if (name == "glove") return InputRepr::kGlove;
  if (name == "concat") return InputRepr::kConcat;
  if (name == "onehot" || name == "one_hot") return InputRepr::kOneHot;
  if (name == "random") return InputRepr::kRandom;
  throw ValidationError(fmt::format(
      "unknown input representation '{}' (expected word2vec, glove, concat, onehot or random)",
      name));
}

std::string_view to_string(InputRepr repr) noexcept {
  switch (repr) {
    case InputRepr::kWord2Vec: return "word2vec";
    case InputRepr::kGlove: return "glove";
    case InputRepr::kConcat: return "concat";
    case InputRepr::kOneHot: return "onehot";
    case InputRepr::kRandom: return "random";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  model.validate();
  train.validate();
  if (input == InputRepr::kRandom && random_dim == 0) {
    throw ValidationError("random_dim must be positive");
  }
  if (input == InputRepr::kOneHot && model.embedding_mode == EmbeddingMode::kNonStatic) {
    throw ValidationError("onehot input requires embedding_mode = static");
  }
  if (folds < 2) throw ValidationError(fmt::format("folds must be at least 2, got {}", folds));
  if (reps < 1) throw ValidationError("reps must be at least 1");
}

std::span<const ConfigKey> config_keys() noexcept {
  static const auto docs = make_key_docs();
  return docs;
}

std::string config_value(const ExperimentConfig& config, std::string_view key) {
  if (key == "threads") return fmt::format("{}", config.threads);
  const KeyEntry* entry = find_key(key);
  if (entry == nullptr) throw ValidationError(fmt::format("unknown config key '{}'", key));
  return entry->get(config);
}

std::vector<std::string> config_diff(const ExperimentConfig& a, const ExperimentConfig& b) {
  std::vector<std::string> out;
  for (const auto& k : config_keys()) {
    if (config_value(a, k.name) != config_value(b, k.name)) out.emplace_back(k.name);
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(fmt::format("config line {}: expected 'key = value'", line_no));
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.emplace(key).second) {
      throw ValidationError(fmt::format("config line {}: '{}' given twice", line_no, key));
    }
    try {
      if (key == "threads") {
        config.threads = parse_u64(value, "threads");
        continue;
      }
      const KeyEntry* entry = find_key(key);
      if (entry == nullptr) throw ValidationError(fmt::format("unknown key '{}'", key));
      entry->set(config, value);
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& k : config_keys()) {
    out += fmt::format("# {}\n{} = {}\n", k.help, k.name, config_value(config, k.name));
  }
  return out;
}

}  // namespace sentcnn
