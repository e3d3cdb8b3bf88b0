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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sentcnn/mat.hpp"
#include "sentcnn/rng.hpp"

namespace sentcnn {

// Word -> vector storage. Words are raw byte strings (no UTF-8 validation).
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim);
  EmbeddingTable(std::vector<std::string> words, Mat vectors);

  std::size_t dim() const noexcept { return vectors_.cols(); }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  const Mat& vectors() const noexcept { return vectors_; }

  std::optional<std::size_t> find(std::string_view word) const;
  std::optional<std::span<const double>> vector(std::string_view word) const;

  friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
    return a.words_ == b.words_ && a.vectors_ == b.vectors_;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> words_;
  Mat vectors_;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

// Optional restriction applied while loading: only words in the set are kept.
using WordFilter = std::unordered_set<std::string>;

// word2vec binary: ASCII header "<count> <dim>\n", then per word the word
// bytes, one space, dim little-endian float32 values and an optional '\n'.
// Truncation and header mismatches raise FormatError carrying the byte offset.
EmbeddingTable load_word2vec_bin(const std::filesystem::path& path,
                                 const WordFilter* keep = nullptr);
void save_word2vec_bin(const EmbeddingTable& table,
                       const std::filesystem::path& path);

// GloVe text: "word v1 v2 ... vd" per line, dim taken from the first line.
EmbeddingTable load_glove_txt(const std::filesystem::path& path,
                              const WordFilter* keep = nullptr);

// Loads by extension: ".bin" is word2vec binary, anything else GloVe text.
EmbeddingTable load_embeddings(const std::filesystem::path& path,
                               const WordFilter* keep = nullptr);

// Range used for out-of-vocabulary sub-vectors and random encodings.
inline constexpr double kRandomInitLow = -0.25;
inline constexpr double kRandomInitHigh = 0.25;

// Marks a token with no row in the encoding; it encodes to a zero row.
inline constexpr std::int32_t kUnknownWord = -1;

// Turns tokens into a zero-padded pad_to x dim sentence matrix.
//
// The vocabulary is compiled at construction: for pretrained and random
// encodings every vocabulary word gets one row of a lookup table, so random
// out-of-vocabulary vectors are drawn exactly once per word. After
// construction the object is immutable and safe to share across threads.
class SentenceEncoding {
 public:
  enum class Mode { kPretrained, kOneHot, kRandom };

  // One or two tables. A word missing from a table gets that table's
  // sub-vector drawn uniformly from [oov_lo, oov_hi).
  static SentenceEncoding pretrained(
      std::vector<std::shared_ptr<const EmbeddingTable>> tables,
      std::span<const std::string> vocab, Rng oov_rng, std::size_t pad_to,
      double oov_lo = kRandomInitLow, double oov_hi = kRandomInitHigh);
  // Row i of the sentence matrix is the indicator of token i's vocab index.
  static SentenceEncoding onehot(std::span<const std::string> vocab,
                                 std::size_t pad_to);
  static SentenceEncoding random(std::size_t dim,
                                 std::span<const std::string> vocab, Rng rng,
                                 std::size_t pad_to,
                                 double lo = kRandomInitLow,
                                 double hi = kRandomInitHigh);

  Mode mode() const noexcept { return mode_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t pad_to() const noexcept { return pad_to_; }
  std::size_t vocab_size() const noexcept { return words_->size(); }
  const std::vector<std::string>& words() const noexcept { return *words_; }

  // Same vocabulary and vectors with a different padded length.
  SentenceEncoding with_pad_to(std::size_t pad_to) const;

  // Lookup rows (vocab_size x dim). Empty for one-hot encodings.
  const Mat& lookup() const noexcept { return *lookup_; }

  std::int32_t id(std::string_view word) const;
  std::vector<std::int32_t> ids(std::span<const std::string> tokens) const;

  // pad_to x dim matrix for an id sequence. Throws ValidationError when the
  // sequence is longer than pad_to.
  Mat matrix(std::span<const std::int32_t> ids) const;

 private:
  SentenceEncoding() = default;

  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  using Index = std::unordered_map<std::string, std::int32_t, Hash, std::equal_to<>>;

  static SentenceEncoding with_vocab(Mode mode, std::size_t dim,
                                     std::span<const std::string> vocab,
                                     std::size_t pad_to);

  Mode mode_ = Mode::kPretrained;
  std::size_t dim_ = 0;
  std::size_t pad_to_ = 0;
  std::shared_ptr<const std::vector<std::string>> words_;
  std::shared_ptr<const Index> index_;
  std::shared_ptr<const Mat> lookup_;
};

Mat build_sentence_matrix(std::span<const std::string> tokens,
                          const SentenceEncoding& encoding);

// Copies rows of `table` selected by ids into a pad_to x cols matrix; unknown
// ids and rows past the sequence stay zero.
Mat gather_rows(const Mat& table, std::span<const std::int32_t> ids,
                std::size_t pad_to);

}  // namespace sentcnn
