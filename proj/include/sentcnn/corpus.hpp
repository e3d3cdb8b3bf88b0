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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentcnn/rng.hpp"

namespace sentcnn {

// Normalizes and tokenizes raw text:
//   * ASCII letters are lowercased;
//   * every byte other than [a-z0-9] and ' , ! ? ( ) becomes a space
//     (this includes all non-ASCII bytes);
//   * the contractions 's 've n't 're 'd 'll are split off as tokens;
//   * , ! ? ( ) are split off as single-character tokens;
//   * the result is split on whitespace.
// The function is idempotent on its own joined output.
std::vector<std::string> clean_text(std::string_view raw);

struct LabeledSentence {
  std::vector<std::string> tokens;
  std::size_t label = 0;

  friend bool operator==(const LabeledSentence&, const LabeledSentence&) = default;
};

class Dataset {
 public:
  Dataset() = default;
  // Computes max_len/avg_len. Throws ValidationError if a label is out of
  // range or a sentence is empty. Classes may be absent from a subset.
  Dataset(std::vector<LabeledSentence> sentences,
          std::vector<std::string> class_names);

  const std::vector<LabeledSentence>& sentences() const noexcept {
    return sentences_;
  }
  const LabeledSentence& operator[](std::size_t i) const { return sentences_[i]; }
  std::size_t size() const noexcept { return sentences_.size(); }
  const std::vector<std::string>& class_names() const noexcept {
    return class_names_;
  }
  std::size_t num_classes() const noexcept { return class_names_.size(); }
  std::size_t max_len() const noexcept { return max_len_; }
  double avg_len() const noexcept { return avg_len_; }

  std::vector<std::size_t> class_counts() const;
  // Examples at the given indices, in that order. Class names are kept.
  Dataset subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<LabeledSentence> sentences_;
  std::vector<std::string> class_names_;
  std::size_t max_len_ = 0;
  double avg_len_ = 0.0;
};

enum class DatasetFormat { kPolarityPair, kTrec, kTsv };

DatasetFormat parse_dataset_format(std::string_view name);
std::string_view to_string(DatasetFormat format) noexcept;

// Two files with one sentence per line; the positive file gets label 1 and
// class names are {"neg", "pos"}.
Dataset load_polarity_pair(const std::filesystem::path& pos,
                           const std::filesystem::path& neg);

// "COARSE:fine text..." per line. Labels are the six coarse TREC classes in
// the fixed order ABBR, DESC, ENTY, HUM, LOC, NUM.
Dataset load_trec(const std::filesystem::path& path);

// "label<TAB>text" per line, no header. With explicit class names, a label
// outside the list is a FormatError; otherwise the sorted set of observed
// labels becomes the class list.
Dataset load_tsv(const std::filesystem::path& path,
                 std::optional<std::vector<std::string>> class_names = {});

// Returns the six coarse TREC labels in canonical order.
std::span<const std::string_view> trec_coarse_labels() noexcept;

// Downsamples every class (without replacement) to the minority-class count
// and shuffles the result.
Dataset undersample_balance(const Dataset& dataset, Rng& rng);

// Words in order of first occurrence across the dataset.
std::vector<std::string> vocabulary(const Dataset& dataset);

// Fixed assignment of examples to k folds.
class FoldPlan {
 public:
  FoldPlan(std::size_t k, std::vector<std::size_t> assignment,
           std::uint64_t seed);

  std::size_t k() const noexcept { return k_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::size_t>& assignment() const noexcept {
    return assignment_;
  }
  std::size_t size() const noexcept { return assignment_.size(); }

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;

  friend bool operator==(const FoldPlan&, const FoldPlan&) = default;

 private:
  std::size_t k_;
  std::vector<std::size_t> assignment_;
  std::uint64_t seed_;
};

// Stratified k-fold partition. Within each class, examples are shuffled with
// a seed derived from (seed, class) and dealt round-robin; each class starts
// where the previous one stopped so total fold sizes also stay balanced.
FoldPlan make_folds(const Dataset& dataset, std::size_t k, std::uint64_t seed);

// Same partition logic over an explicit label vector.
FoldPlan make_folds(std::span<const std::size_t> labels, std::size_t num_classes,
                    std::size_t k, std::uint64_t seed);

}  // namespace sentcnn
