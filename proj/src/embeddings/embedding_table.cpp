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

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sentcnn/embeddings.hpp"
#include "sentcnn/error.hpp"

namespace sentcnn {

namespace {

// Buffered sequential reader that tracks the absolute byte offset.
class ByteReader {
 public:
  explicit ByteReader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
    if (!in_) throw IoError(fmt::format("cannot open '{}'", path.string()));
    buffer_.resize(1 << 16);
  }

  std::uint64_t offset() const noexcept { return offset_; }

  // Next byte, or -1 at end of file.
  int peek() {
    if (pos_ == len_ && !refill()) return -1;
    return static_cast<unsigned char>(buffer_[pos_]);
  }
  int get() {
    const int c = peek();
    if (c >= 0) {
      ++pos_;
      ++offset_;
    }
    return c;
  }
  // Reads up to n bytes; returns how many were read.
  std::size_t read(char* out, std::size_t n) {
    std::size_t done = 0;
    while (done < n) {
      if (pos_ == len_ && !refill()) break;
      const std::size_t take = std::min(n - done, len_ - pos_);
      std::memcpy(out + done, buffer_.data() + pos_, take);
      pos_ += take;
      offset_ += take;
      done += take;
    }
    return done;
  }

 private:
  bool refill() {
    in_.read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    len_ = static_cast<std::size_t>(in_.gcount());
    pos_ = 0;
    return len_ > 0;
  }

  std::ifstream in_;
  std::vector<char> buffer_;
  std::size_t pos_ = 0;
  std::size_t len_ = 0;
  std::uint64_t offset_ = 0;
};

std::uint64_t parse_count(std::string_view text, std::string_view what,
                          const std::filesystem::path& path) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw FormatError(fmt::format("{}: bad {} '{}' in header", path.string(), what, text), 0);
  }
  return value;
}

float decode_le_float(const unsigned char* p) noexcept {
  const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                             (static_cast<std::uint32_t>(p[1]) << 8) |
                             (static_cast<std::uint32_t>(p[2]) << 16) |
                             (static_cast<std::uint32_t>(p[3]) << 24);
  return std::bit_cast<float>(bits);
}

void encode_le_float(float value, char* out) noexcept {
  const auto bits = std::bit_cast<std::uint32_t>(value);
  for (int i = 0; i < 4; ++i) out[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
}

// Accumulates rows while loading; skips duplicates (first occurrence wins).
class TableBuilder {
 public:
  explicit TableBuilder(std::size_t dim) : dim_(dim) {}

  bool add(std::string word, std::span<const double> values) {
    if (!seen_.insert(word).second) {
      ++duplicates_;
      return false;
    }
    words_.push_back(std::move(word));
    data_.insert(data_.end(), values.begin(), values.end());
    return true;
  }

  EmbeddingTable finish(const std::filesystem::path& path) && {
    if (duplicates_ > 0) {
      spdlog::warn("{}: skipped {} duplicate word(s)", path.string(), duplicates_);
    }
    const std::size_t rows = words_.size();
    return EmbeddingTable(std::move(words_), Mat(rows, dim_, std::move(data_)));
  }

 private:
  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::unordered_set<std::string> seen_;
  std::size_t duplicates_ = 0;
};

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim) : vectors_(0, dim) {
  if (dim == 0) throw ValidationError("EmbeddingTable: dim must be positive");
}

EmbeddingTable::EmbeddingTable(std::vector<std::string> words, Mat vectors)
    : words_(std::move(words)), vectors_(std::move(vectors)) {
  if (vectors_.cols() == 0) throw ValidationError("EmbeddingTable: dim must be positive");
  if (vectors_.rows() != words_.size()) {
    throw ValidationError(fmt::format("EmbeddingTable: {} words but {} vectors",
                                      words_.size(), vectors_.rows()));
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw ValidationError(fmt::format("EmbeddingTable: duplicate word '{}'", words_[i]));
    }
  }
}

std::optional<std::size_t> EmbeddingTable::find(std::string_view word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::span<const double>> EmbeddingTable::vector(std::string_view word) const {
  const auto row = find(word);
  if (!row) return std::nullopt;
  return vectors_.row(*row);
}

EmbeddingTable load_word2vec_bin(const std::filesystem::path& path, const WordFilter* keep) {
  ByteReader in(path);
  std::string header;
  for (int c = in.get(); c != '\n'; c = in.get()) {
    if (c < 0) throw FormatError(fmt::format("{}: missing header line", path.string()), 0);
    header.push_back(static_cast<char>(c));
  }
  const std::size_t space = header.find(' ');
  if (space == std::string::npos) {
    throw FormatError(fmt::format("{}: header must be '<count> <dim>'", path.string()), 0);
  }
  const std::uint64_t count =
      parse_count(std::string_view(header).substr(0, space), "word count", path);
  const std::uint64_t dim = parse_count(std::string_view(header).substr(space + 1), "dim", path);
  if (dim == 0) throw FormatError(fmt::format("{}: dim must be positive", path.string()), 0);

  TableBuilder builder(dim);
  std::vector<char> raw(dim * 4);
  std::vector<double> values(dim);
  std::string word;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t word_start = in.offset();
    word.clear();
    for (int c = in.get(); c != ' '; c = in.get()) {
      if (c < 0) {
        throw FormatError(fmt::format("{}: file ends inside word #{} at byte offset {}",
                                      path.string(), i, in.offset()),
                          in.offset());
      }
      word.push_back(static_cast<char>(c));
    }
    if (word.empty()) {
      throw FormatError(fmt::format("{}: empty word #{} at byte offset {}", path.string(),
                                    i, word_start),
                        word_start);
    }
    const std::uint64_t vector_start = in.offset();
    const std::size_t got = in.read(raw.data(), raw.size());
    if (got != raw.size()) {
      throw FormatError(
          fmt::format("{}: file ends inside the vector of word #{} ('{}'): vector starts at "
                      "byte offset {}, {} of {} bytes present",
                      path.string(), i, word, vector_start, got, raw.size()),
          vector_start);
    }
    if (in.peek() == '\n') in.get();
    if (keep != nullptr && !keep->contains(word)) continue;
    const auto* bytes = reinterpret_cast<const unsigned char*>(raw.data());
    for (std::size_t j = 0; j < dim; ++j) {
      values[j] = static_cast<double>(decode_le_float(bytes + 4 * j));
    }
    builder.add(word, values);
  }
  for (int c = in.peek(); c >= 0; c = in.peek()) {
    if (c != '\n' && c != ' ' && c != '\r') {
      throw FormatError(fmt::format("{}: data after the {} records declared in the header, "
                                    "at byte offset {}",
                                    path.string(), count, in.offset()),
                        in.offset());
    }
    in.get();
  }
  return std::move(builder).finish(path);
}

void save_word2vec_bin(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << table.size() << ' ' << table.dim() << '\n';
  std::vector<char> raw(table.dim() * 4);
  for (std::size_t i = 0; i < table.size(); ++i) {
    out.write(table.words()[i].data(), static_cast<std::streamsize>(table.words()[i].size()));
    out.put(' ');
    const auto row = table.vectors().row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      encode_le_float(static_cast<float>(row[j]), raw.data() + 4 * j);
    }
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
    out.put('\n');
  }
  out.flush();
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

EmbeddingTable load_glove_txt(const std::filesystem::path& path, const WordFilter* keep) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));

  std::optional<TableBuilder> builder;
  std::size_t dim = 0;
  std::vector<std::string_view> fields;
  std::vector<double> values;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fields.clear();
    std::size_t pos = 0;
    while (pos < line.size()) {
      const std::size_t end = std::min(line.find(' ', pos), line.size());
      if (end > pos) fields.emplace_back(line.data() + pos, end - pos);
      pos = end + 1;
    }
    if (dim == 0) {
      if (fields.size() < 2) {
        throw FormatError(fmt::format("{}:{}: expected a word followed by values",
                                      path.string(), number),
                          number);
      }
      dim = fields.size() - 1;
      builder.emplace(dim);
    }
    if (fields.size() < dim + 1) {
      throw FormatError(fmt::format("{}:{}: expected {} values, found {}", path.string(),
                                    number, dim, fields.size() - 1),
                        number);
    }
    // Some published files contain words with embedded spaces: everything
    // before the last `dim` fields is the word.
    const std::size_t word_fields = fields.size() - dim;
    const std::size_t word_end =
        static_cast<std::size_t>(fields[word_fields - 1].data() - line.data()) +
        fields[word_fields - 1].size();
    std::string word = line.substr(0, word_end);
    if (keep != nullptr && !keep->contains(word)) continue;
    values.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto f = fields[word_fields + j];
      const auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), values[j]);
      if (ec != std::errc{} || end != f.data() + f.size()) {
        throw FormatError(
            fmt::format("{}:{}: bad number '{}'", path.string(), number, f), number);
      }
    }
    builder->add(std::move(word), values);
  }
  if (in.bad()) throw IoError(fmt::format("read error on '{}'", path.string()));
  if (!builder) throw FormatError(fmt::format("{}: no vectors", path.string()), 0);
  return std::move(*builder).finish(path);
}

EmbeddingTable load_embeddings(const std::filesystem::path& path, const WordFilter* keep) {
  if (path.extension() == ".bin") return load_word2vec_bin(path, keep);
  return load_glove_txt(path, keep);
}

}  // namespace sentcnn
