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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sentcnn/baselines.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/kernels.hpp"
#include "sentcnn/sweep.hpp"

namespace fs = std::filesystem;
using namespace sentcnn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

constexpr const char* kEmbeddingsEnv = "SENTCNN_EMBEDDINGS_DIR";

struct Inputs {
  std::string config;
  std::string dataset;
  std::vector<std::string> embeddings;
  std::optional<std::size_t> threads;
};

void add_inputs(CLI::App* cmd, Inputs& in, bool need_config) {
  auto* opt = cmd->add_option("--config", in.config, "experiment config (key = value)");
  if (need_config) opt->check(CLI::ExistingFile);
  cmd->add_option("--dataset", in.dataset, "dataset descriptor written by `prep`")->required();
  cmd->add_option("--embeddings", in.embeddings,
                  fmt::format("embedding file (.bin word2vec, else GloVe text) or directory; "
                              "defaults to ${}",
                              kEmbeddingsEnv));
  cmd->add_option("--threads", in.threads, "worker threads (0 = all processors)");
}

EmbeddingStore make_store(const std::vector<std::string>& args) {
  std::vector<fs::path> paths(args.begin(), args.end());
  if (paths.empty()) {
    if (const char* dir = std::getenv(kEmbeddingsEnv); dir != nullptr && *dir != '\0') {
      paths.emplace_back(dir);
    }
  }
  std::optional<fs::path> word2vec;
  std::optional<fs::path> glove;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      const auto found = EmbeddingStore::from_directory(p);
      if (!word2vec) word2vec = found.word2vec_path();
      if (!glove) glove = found.glove_path();
    } else if (!fs::exists(p)) {
      throw IoError(fmt::format("embedding path '{}' does not exist", p.string()));
    } else if (p.extension() == ".bin") {
      word2vec = p;
    } else {
      glove = p;
    }
  }
  return EmbeddingStore(std::move(word2vec), std::move(glove));
}

struct Loaded {
  std::string name;
  Dataset dataset;
  ExperimentConfig config;
};

Loaded load_inputs(const Inputs& in) {
  Loaded out;
  if (!in.config.empty()) out.config = load_config(in.config);
  if (in.threads) out.config.threads = *in.threads;
  const DatasetSource source = read_meta(in.dataset);
  out.name = source.name;
  out.dataset = source.load();
  return out;
}

void finish_setup(Loaded& loaded) {
  if (loaded.config.balance) {
    Rng rng(loaded.config.fold_seed);
    loaded.dataset = undersample_balance(loaded.dataset, rng);
    spdlog::info("balanced to {} examples", loaded.dataset.size());
  }
  loaded.config.model.num_classes = loaded.dataset.num_classes();
  loaded.config.validate();
}

int cmd_prep(const std::string& format, const std::string& pos, const std::string& neg,
             const std::string& input, const std::string& out, std::string name) {
  DatasetSource source;
  source.format = parse_dataset_format(format);
  source.pos = pos;
  source.neg = neg;
  source.input = input;
  source.name = name.empty() ? fs::path(out).stem().string() : std::move(name);
  const Dataset dataset = source.load();
  write_meta(source, dataset, out);
  const auto counts = dataset.class_counts();
  fmt::print("dataset     {}\n", source.name);
  fmt::print("sentences   {}\n", dataset.size());
  for (std::size_t c = 0; c < dataset.num_classes(); ++c) {
    fmt::print("  {:<9} {}\n", dataset.class_names()[c], counts[c]);
  }
  fmt::print("max length  {}\n", dataset.max_len());
  fmt::print("avg length  {:.2f}\n", dataset.avg_len());
  fmt::print("vocabulary  {}\n", vocabulary(dataset).size());
  fmt::print("wrote {}\n", out);
  return kExitOk;
}

int cmd_cv(const Inputs& in, std::optional<std::size_t> reps, const std::string& metric,
           bool balance, const std::string& out_path) {
  Loaded loaded = load_inputs(in);
  if (reps) loaded.config.reps = *reps;
  if (!metric.empty()) loaded.config.metric = parse_metric(metric);
  if (balance) loaded.config.balance = true;
  finish_setup(loaded);
  const auto& config = loaded.config;
  EmbeddingStore store = make_store(in.embeddings);
  const SentenceEncoding encoding = build_encoding(config, loaded.dataset, &store);
  config.model.validate_for(encoding.pad_to());
  const FoldPlan plan = make_folds(loaded.dataset, config.folds, config.fold_seed);
  spdlog::info("{}: {} examples, {} folds, {} replications, pad_to {}", loaded.name,
               loaded.dataset.size(), config.folds, config.reps, encoding.pad_to());

  const CvOptions options{config.metric, config.threads};
  const auto report = replicate_cv(
      config.reps, loaded.dataset, plan, encoding, config.model, config.train, options,
      [&](std::size_t r, const ReplicationDetail& detail) {
        fmt::print("replication {:>2}  {:.2f}\n", r, detail.cv.mean);
        if (out_path.empty()) return;
        std::vector<TrialResult> rows;
        for (std::size_t f = 0; f < detail.cv.fold_scores.size(); ++f) {
          rows.push_back({loaded.name, "base", "base", r, f, std::string(to_string(config.metric)),
                          detail.cv.fold_scores[f], detail.cv.fold_seconds[f], detail.seed});
        }
        write_results(rows, out_path);
      });
  fmt::print("{} {:.2f} ({:.2f}, {:.2f})\n", to_string(config.metric), report.mean, report.min,
             report.max);
  return kExitOk;
}

int cmd_sweep(const Inputs& in, const std::string& axis_name, const std::string& values,
              std::optional<std::size_t> reps, const std::string& out_path) {
  Loaded loaded = load_inputs(in);
  if (reps) loaded.config.reps = *reps;
  finish_setup(loaded);

  SweepSpec spec;
  spec.base = loaded.config;
  spec.axis = parse_axis(axis_name);
  spec.values = split_values(values);
  spec.n_reps = loaded.config.reps;
  spec.dataset = loaded.name;
  spec.seed = loaded.config.train.seed;
  const auto configs = expand_sweep(spec);

  EmbeddingStore store = make_store(in.embeddings);
  const FoldPlan plan = make_folds(loaded.dataset, loaded.config.folds, loaded.config.fold_seed);
  TrialContext context;
  context.dataset_name = loaded.name;
  context.dataset = &loaded.dataset;
  context.plan = &plan;
  context.store = &store;
  context.threads = loaded.config.threads;
  context.results_path = fs::path(out_path);
  const TrialRun run = run_trials(configs, spec.axis, spec.n_reps, context);
  if (run.skipped > 0) spdlog::info("skipped {} completed replications", run.skipped);

  const auto all_rows = read_results(out_path);
  std::vector<TrialResult> mine;
  for (const auto& row : all_rows) {
    if (row.dataset == loaded.name && row.axis == to_string(spec.axis)) mine.push_back(row);
  }
  const auto agg = aggregate(mine);
  write_aggregate(agg, aggregate_path(out_path));
  if (!agg.empty()) fmt::print("{}", render_report(agg, agg.front().value));
  for (const auto& f : run.failures) {
    fmt::print(stderr, "failed: {} replication {}: {}\n", f.value, f.replication, f.message);
  }
  return run.failures.empty() ? kExitOk : kExitValidation;
}

int cmd_report(const std::string& in_path, const std::string& baseline) {
  const auto rows = read_results(in_path);
  const auto agg = aggregate(rows);
  if (agg.empty()) throw ValidationError(fmt::format("'{}' holds no results", in_path));
  fmt::print("{}", render_report(agg, baseline.empty() ? agg.front().value : baseline));
  return kExitOk;
}

int cmd_baseline(const Inputs& in, const std::string& mode, std::size_t cap, bool binary) {
  Loaded loaded = load_inputs(in);
  finish_setup(loaded);
  BaselineOptions options;
  options.mode = parse_feature_mode(mode);
  options.ngram_cap = cap;
  options.binary_counts = binary;
  options.seed = loaded.config.fold_seed;
  options.threads = loaded.config.threads;
  std::shared_ptr<const EmbeddingTable> table;
  if (options.mode != FeatureMode::kBow) {
    EmbeddingStore store = make_store(in.embeddings);
    const auto vocab = vocabulary(loaded.dataset);
    table = store.has_word2vec() ? store.word2vec(vocab) : store.glove(vocab);
  }
  const FoldPlan plan = make_folds(loaded.dataset, loaded.config.folds, loaded.config.fold_seed);
  const auto scores = run_baseline_cv(loaded.dataset, plan, table.get(), options);
  double sum = 0.0;
  for (std::size_t f = 0; f < scores.size(); ++f) {
    fmt::print("fold {:>2}  {:.2f}\n", f, scores[f]);
    sum += scores[f];
  }
  fmt::print("accuracy {:.2f}\n", sum / static_cast<double>(scores.size()));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentence classification CNN and hyperparameter sensitivity sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sentcnn 0.1.0");
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  std::string format, pos, neg, input, out, name;
  auto* prep = app.add_subcommand("prep", "load and clean a dataset, write its descriptor");
  prep->add_option("--format", format, "polarity-pair, trec or tsv")
      ->required()
      ->check(CLI::IsMember({"polarity-pair", "trec", "tsv"}));
  prep->add_option("--pos", pos, "positive sentences, one per line")->check(CLI::ExistingFile);
  prep->add_option("--neg", neg, "negative sentences, one per line")->check(CLI::ExistingFile);
  prep->add_option("--input", input, "labelled input file")->check(CLI::ExistingFile);
  prep->add_option("--out", out, "descriptor to write (.meta)")->required();
  prep->add_option("--name", name, "dataset name (default: descriptor stem)");

  Inputs cv_in;
  std::optional<std::size_t> cv_reps;
  std::string cv_metric, cv_out;
  bool cv_balance = false;
  auto* cv = app.add_subcommand("cv", "replicated k-fold cross-validation of one config");
  add_inputs(cv, cv_in, true);
  cv->add_option("--reps", cv_reps, "replications");
  cv->add_option("--metric", cv_metric, "acc or auc")->check(CLI::IsMember({"acc", "accuracy", "auc"}));
  cv->add_flag("--balance", cv_balance, "under-sample to equal class sizes");
  cv->add_option("--out", cv_out, "append fold scores to this results CSV");

  Inputs sw_in;
  std::string axis, values, sw_out;
  std::optional<std::size_t> sw_reps;
  auto* sweep = app.add_subcommand("sweep", "vary one hyperparameter, replicating each value");
  add_inputs(sweep, sw_in, true);
  sweep->add_option("--axis", axis, "axis to vary")->required();
  sweep->add_option("--values", values, "comma-separated values, e.g. 1,3,5 or (3,4,5),(7,7,7)")
      ->required();
  sweep->add_option("--reps", sw_reps, "replications per value");
  sweep->add_option("--out", sw_out, "results CSV (appended, resumable)")->required();

  std::string report_in, baseline_value;
  auto* report = app.add_subcommand("report", "summarize a results CSV");
  report->add_option("--in", report_in, "results CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--baseline", baseline_value, "value that percent changes refer to");

  Inputs bl_in;
  std::string bl_mode = "bow";
  std::size_t bl_cap = kDefaultNgramCap;
  bool bl_binary = false;
  auto* baseline = app.add_subcommand("baseline", "logistic regression baselines");
  add_inputs(baseline, bl_in, false);
  baseline->add_option("--mode", bl_mode, "bow, wv or bowwv")
      ->check(CLI::IsMember({"bow", "wv", "bowwv"}));
  baseline->add_option("--cap", bl_cap, "n-gram vocabulary size");
  baseline->add_flag("--binary", bl_binary, "0/1 n-gram features instead of counts");

  auto* config = app.add_subcommand("config", "print every config key with its default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));
  spdlog::set_pattern("[%H:%M:%S] [%^%l%$] %v");
  spdlog::debug("kernels: {}", kernels::active().name);

  try {
    if (*prep) return cmd_prep(format, pos, neg, input, out, name);
    if (*cv) return cmd_cv(cv_in, cv_reps, cv_metric, cv_balance, cv_out);
    if (*sweep) return cmd_sweep(sw_in, axis, values, sw_reps, sw_out);
    if (*report) return cmd_report(report_in, baseline_value);
    if (*baseline) return cmd_baseline(bl_in, bl_mode, bl_cap, bl_binary);
    if (*config) {
      fmt::print("{}", format_config(ExperimentConfig{}));
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    spdlog::error("{}", e.what());
    return kExitValidation;
  } catch (const FormatError& e) {
    spdlog::error("{}", e.what());
    return kExitIo;
  } catch (const IoError& e) {
    spdlog::error("{}", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitIo;
  }
  return kExitValidation;
}
