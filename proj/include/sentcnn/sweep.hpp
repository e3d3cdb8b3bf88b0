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
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentcnn/cnn.hpp"
#include "sentcnn/corpus.hpp"
#include "sentcnn/embeddings.hpp"
#include "sentcnn/eval.hpp"
#include "sentcnn/optim.hpp"

namespace sentcnn {

// Word representation fed to the network.
enum class InputRepr { kWord2Vec, kGlove, kConcat, kOneHot, kRandom };
InputRepr parse_input_repr(std::string_view name);
std::string_view to_string(InputRepr repr) noexcept;

struct ExperimentConfig {
  ModelConfig model;
  TrainConfig train;
  InputRepr input = InputRepr::kWord2Vec;
  std::size_t random_dim = 300;
  std::uint64_t embedding_seed = 0;  // draws for out-of-vocabulary vectors
  std::size_t folds = 10;
  std::uint64_t fold_seed = 0;
  std::size_t reps = 10;
  Metric metric = Metric::kAccuracy;
  bool balance = false;
  std::size_t threads = 0;  // 0 = hardware concurrency

  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Parses flat "key = value" text. Blank lines and '#' comments are ignored;
// unknown keys, repeated keys and malformed values are ValidationErrors that
// name the line. Keys not mentioned keep their defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
// Every key with its current value; parse_config(format_config(c)) == c.
std::string format_config(const ExperimentConfig& config);

struct ConfigKey {
  std::string_view name;
  std::string_view help;
};
std::span<const ConfigKey> config_keys() noexcept;

// Reads one key of a config as its canonical string.
std::string config_value(const ExperimentConfig& config, std::string_view key);
// Keys whose canonical values differ between a and b.
std::vector<std::string> config_diff(const ExperimentConfig& a, const ExperimentConfig& b);

// Where a dataset comes from, as written to a .meta descriptor.
struct DatasetSource {
  DatasetFormat format = DatasetFormat::kTsv;
  std::filesystem::path pos;
  std::filesystem::path neg;
  std::filesystem::path input;
  std::string name;

  Dataset load() const;
};

void write_meta(const DatasetSource& source, const Dataset& dataset,
                const std::filesystem::path& path);
DatasetSource read_meta(const std::filesystem::path& path);

// Embedding files per representation. Tables are loaded on first use,
// restricted to the words of `vocab`, and shared afterwards.
class EmbeddingStore {
 public:
  EmbeddingStore(std::optional<std::filesystem::path> word2vec,
                 std::optional<std::filesystem::path> glove);

  // Locates GoogleNews-vectors-negative300.bin / glove.840B.300d.txt (or any
  // single .bin / .txt file) inside `dir`.
  static EmbeddingStore from_directory(const std::filesystem::path& dir);

  std::shared_ptr<const EmbeddingTable> word2vec(std::span<const std::string> vocab);
  std::shared_ptr<const EmbeddingTable> glove(std::span<const std::string> vocab);

  bool has_word2vec() const noexcept { return word2vec_path_.has_value(); }
  bool has_glove() const noexcept { return glove_path_.has_value(); }
  const std::optional<std::filesystem::path>& word2vec_path() const noexcept {
    return word2vec_path_;
  }
  const std::optional<std::filesystem::path>& glove_path() const noexcept { return glove_path_; }

 private:
  std::shared_ptr<const EmbeddingTable> load(const std::optional<std::filesystem::path>& path,
                                             std::shared_ptr<const EmbeddingTable>& cache,
                                             std::span<const std::string> vocab,
                                             std::string_view what);

  std::optional<std::filesystem::path> word2vec_path_;
  std::optional<std::filesystem::path> glove_path_;
  std::shared_ptr<const EmbeddingTable> word2vec_;
  std::shared_ptr<const EmbeddingTable> glove_;
};

// Encoding for `config.input` over the dataset vocabulary, padded to
// max(dataset.max_len(), largest region size).
SentenceEncoding build_encoding(const ExperimentConfig& config, const Dataset& dataset,
                                EmbeddingStore* store);
std::size_t pad_length(const ModelConfig& model, const Dataset& dataset) noexcept;

enum class Axis {
  kRegionSize,
  kRegionCombo,
  kFeatureMaps,
  kActivation,
  kPooling,
  kDropoutPenult,
  kDropoutConv,
  kL2Constraint,
  kInputRepr,
};
Axis parse_axis(std::string_view name);
std::string_view to_string(Axis axis) noexcept;
// Config keys an axis is allowed to change.
std::span<const std::string_view> axis_fields(Axis axis) noexcept;

struct SweepSpec {
  ExperimentConfig base;
  Axis axis = Axis::kRegionSize;
  std::vector<std::string> values;
  std::size_t n_reps = 10;
  std::string dataset;
  std::uint64_t seed = 0;

  void validate() const;
};

// Splits "1,3,(3,4,5),[7, 7]" at top-level commas; brackets nest.
std::vector<std::string> split_values(std::string_view list);

struct BoundConfig {
  std::string value;  // canonical axis value
  ExperimentConfig config;
};

// One config per axis value, in the given order. Only the axis field group
// differs from the base (plus the base training seed, which is spec.seed).
std::vector<BoundConfig> expand_sweep(const SweepSpec& spec);
// Canonical form of one axis value; throws ValidationError naming it.
std::string canonical_value(Axis axis, std::string_view value);

struct TrialResult {
  std::string dataset;
  std::string axis;
  std::string value;
  std::size_t replication = 0;
  std::size_t fold = 0;
  std::string metric;
  double score = 0.0;
  double seconds = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

inline constexpr std::string_view kResultsHeader =
    "dataset,axis,value,replication,fold,metric,score,seconds,seed";
inline constexpr std::string_view kAggregateHeader = "value,mean,min,max";

// Appends rows to a results CSV, writing the header first when the file is
// new or empty. Scores carry 4 decimals, seconds 3.
void write_results(std::span<const TrialResult> rows, const std::filesystem::path& path);
std::vector<TrialResult> read_results(const std::filesystem::path& path);
std::string format_result_row(const TrialResult& row);
std::vector<std::string> parse_csv_line(std::string_view line);
std::string csv_field(std::string_view field);

struct AggregateRow {
  std::string value;
  std::vector<double> replication_means;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Per value (first-appearance order): the mean over folds of each
// replication, then mean/min/max over replications.
std::vector<AggregateRow> aggregate(std::span<const TrialResult> rows);
void write_aggregate(std::span<const AggregateRow> rows, const std::filesystem::path& path);
// results.csv -> results.agg.csv
std::filesystem::path aggregate_path(const std::filesystem::path& results_path);

// Plain-text table of value, "mean (min, max)" and percent change relative
// to the baseline value's mean. Throws ValidationError for an unknown
// baseline.
std::string render_report(std::span<const AggregateRow> rows, std::string_view baseline_value);

struct TrialFailure {
  std::string value;
  std::size_t replication = 0;
  std::string message;
};

struct TrialRun {
  std::vector<TrialResult> rows;  // rows produced by this call
  std::vector<TrialFailure> failures;
  std::size_t skipped = 0;  // (config, replication) pairs already complete
};

struct TrialContext {
  std::string dataset_name;
  const Dataset* dataset = nullptr;
  const FoldPlan* plan = nullptr;
  EmbeddingStore* store = nullptr;
  std::size_t threads = 0;
  // When set, rows are appended here as each replication finishes and
  // completed pairs found in the file are skipped.
  std::optional<std::filesystem::path> results_path;
};

// Runs every (config, replication) pair. Replication r of every config uses
// training seed mix_seed(config.train.seed, r) on the shared fold plan.
TrialRun run_trials(std::span<const BoundConfig> configs, Axis axis, std::size_t n_reps,
                    const TrialContext& context);

}  // namespace sentcnn
