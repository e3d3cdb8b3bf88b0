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

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sentcnn/embeddings.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/numeric.hpp"

namespace sentcnn {

SentenceEncoding SentenceEncoding::with_vocab(Mode mode, std::size_t dim,
                                              std::span<const std::string> vocab,
                                              std::size_t pad_to) {
  if (pad_to == 0) throw ValidationError("SentenceEncoding: pad_to must be positive");
  if (dim == 0) throw ValidationError("SentenceEncoding: dimension must be positive");
  auto words = std::make_shared<std::vector<std::string>>();
  auto index = std::make_shared<Index>();
  index->reserve(vocab.size());
  for (const auto& w : vocab) {
    if (index->emplace(w, static_cast<std::int32_t>(words->size())).second) {
      words->push_back(w);
    }
  }
  SentenceEncoding enc;
  enc.mode_ = mode;
  enc.dim_ = dim;
  enc.pad_to_ = pad_to;
  enc.words_ = std::move(words);
  enc.index_ = std::move(index);
  enc.lookup_ = std::make_shared<const Mat>();
  return enc;
}

SentenceEncoding SentenceEncoding::pretrained(
    std::vector<std::shared_ptr<const EmbeddingTable>> tables,
    std::span<const std::string> vocab, Rng oov_rng, std::size_t pad_to, double oov_lo,
    double oov_hi) {
  if (tables.empty() || tables.size() > 2) {
    throw ValidationError("pretrained encoding takes one or two embedding tables");
  }
  std::size_t dim = 0;
  for (const auto& t : tables) {
    if (!t) throw ValidationError("pretrained encoding: null embedding table");
    dim += t->dim();
  }
  auto enc = with_vocab(Mode::kPretrained, dim, vocab, pad_to);
  Mat lookup(enc.vocab_size(), dim);
  std::size_t missing = 0;
  for (std::size_t w = 0; w < enc.vocab_size(); ++w) {
    auto row = lookup.row(w);
    std::size_t col = 0;
    for (const auto& t : tables) {
      auto part = row.subspan(col, t->dim());
      if (const auto v = t->vector(enc.words()[w])) {
        std::copy(v->begin(), v->end(), part.begin());
      } else {
        uniform_fill(part, oov_rng, oov_lo, oov_hi);
        ++missing;
      }
      col += t->dim();
    }
  }
  spdlog::debug("pretrained encoding: {} random sub-vector(s) for {} words", missing,
                enc.vocab_size());
  enc.lookup_ = std::make_shared<const Mat>(std::move(lookup));
  return enc;
}

SentenceEncoding SentenceEncoding::onehot(std::span<const std::string> vocab,
                                          std::size_t pad_to) {
  std::size_t unique = 0;
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& w : vocab) unique += seen.insert(w).second ? 1 : 0;
  }
  if (unique == 0) throw ValidationError("one-hot encoding needs a non-empty vocabulary");
  return with_vocab(Mode::kOneHot, unique, vocab, pad_to);
}

SentenceEncoding SentenceEncoding::random(std::size_t dim, std::span<const std::string> vocab,
                                          Rng rng, std::size_t pad_to, double lo,
                                          double hi) {
  auto enc = with_vocab(Mode::kRandom, dim, vocab, pad_to);
  Mat lookup(enc.vocab_size(), dim);
  uniform_fill(lookup, rng, lo, hi);
  enc.lookup_ = std::make_shared<const Mat>(std::move(lookup));
  return enc;
}

SentenceEncoding SentenceEncoding::with_pad_to(std::size_t pad_to) const {
  if (pad_to == 0) throw ValidationError("SentenceEncoding: pad_to must be positive");
  SentenceEncoding copy = *this;
  copy.pad_to_ = pad_to;
  return copy;
}

std::int32_t SentenceEncoding::id(std::string_view word) const {
  const auto it = index_->find(word);
  return it == index_->end() ? kUnknownWord : it->second;
}

std::vector<std::int32_t> SentenceEncoding::ids(std::span<const std::string> tokens) const {
  std::vector<std::int32_t> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

Mat SentenceEncoding::matrix(std::span<const std::int32_t> ids) const {
  if (ids.size() > pad_to_) {
    throw ValidationError(fmt::format("sentence of {} tokens exceeds pad_to={}", ids.size(),
                                      pad_to_));
  }
  if (mode_ != Mode::kOneHot) return gather_rows(*lookup_, ids, pad_to_);
  Mat out(pad_to_, dim_);
  for (std::size_t r = 0; r < ids.size(); ++r) {
    if (ids[r] >= 0) out(r, static_cast<std::size_t>(ids[r])) = 1.0;
  }
  return out;
}

Mat build_sentence_matrix(std::span<const std::string> tokens,
                          const SentenceEncoding& encoding) {
  return encoding.matrix(encoding.ids(tokens));
}

Mat gather_rows(const Mat& table, std::span<const std::int32_t> ids, std::size_t pad_to) {
  if (ids.size() > pad_to) {
    throw ValidationError(
        fmt::format("sentence of {} tokens exceeds pad_to={}", ids.size(), pad_to));
  }
  Mat out(pad_to, table.cols());
  for (std::size_t r = 0; r < ids.size(); ++r) {
    if (ids[r] < 0) continue;
    const auto src = table.row(static_cast<std::size_t>(ids[r]));
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace sentcnn
