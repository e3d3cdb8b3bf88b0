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
#include <fstream>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/spdlog.h>

#include "sentcnn/error.hpp"
#include "sentcnn/sweep.hpp"
#include "text_util.hpp"

namespace sentcnn {

namespace fs = std::filesystem;

Dataset DatasetSource::load() const {
  switch (format) {
    case DatasetFormat::kPolarityPair:
      if (pos.empty() || neg.empty()) {
        throw ValidationError("polarity-pair datasets need both pos and neg files");
      }
      return load_polarity_pair(pos, neg);
    case DatasetFormat::kTrec:
      if (input.empty()) throw ValidationError("trec datasets need an input file");
      return load_trec(input);
    case DatasetFormat::kTsv:
      if (input.empty()) throw ValidationError("tsv datasets need an input file");
      return load_tsv(input);
  }
  throw ValidationError("unknown dataset format");
}

void write_meta(const DatasetSource& source, const Dataset& dataset, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  const auto abs = [](const fs::path& p) { return p.empty() ? std::string() : fs::absolute(p).string(); };
  out << fmt::format("name = {}\n", source.name);
  out << fmt::format("format = {}\n", to_string(source.format));
  if (!source.pos.empty()) out << fmt::format("pos = {}\n", abs(source.pos));
  if (!source.neg.empty()) out << fmt::format("neg = {}\n", abs(source.neg));
  if (!source.input.empty()) out << fmt::format("input = {}\n", abs(source.input));
  out << fmt::format("# sentences = {}\n", dataset.size());
  out << fmt::format("# classes = {}\n", fmt::join(dataset.class_names(), ","));
  out << fmt::format("# class_counts = {}\n", fmt::join(dataset.class_counts(), ","));
  out << fmt::format("# max_len = {}\n", dataset.max_len());
  out << fmt::format("# avg_len = {:.2f}\n", dataset.avg_len());
  out << fmt::format("# vocab = {}\n", vocabulary(dataset).size());
  if (!out.flush()) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

DatasetSource read_meta(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open dataset descriptor '{}'", path.string()));
  DatasetSource source;
  source.name = path.stem().string();
  const fs::path base = path.parent_path();
  const auto resolve = [&](std::string_view v) {
    fs::path p{std::string(v)};
    return p.is_absolute() ? p : base / p;
  };
  bool have_format = false;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError(fmt::format("{}:{}: expected 'key = value'", path.string(), line_no),
                        line_no);
    }
    const auto key = detail::trim(view.substr(0, eq));
    const auto value = detail::trim(view.substr(eq + 1));
    if (key == "name") {
      source.name = std::string(value);
    } else if (key == "format") {
      source.format = parse_dataset_format(value);
      have_format = true;
    } else if (key == "pos") {
      source.pos = resolve(value);
    } else if (key == "neg") {
      source.neg = resolve(value);
    } else if (key == "input") {
      source.input = resolve(value);
    } else {
      throw FormatError(
          fmt::format("{}:{}: unknown key '{}'", path.string(), line_no, key), line_no);
    }
  }
  if (!have_format) {
    throw FormatError(fmt::format("{}: missing 'format'", path.string()), line_no);
  }
  return source;
}

EmbeddingStore::EmbeddingStore(std::optional<fs::path> word2vec, std::optional<fs::path> glove)
    : word2vec_path_(std::move(word2vec)), glove_path_(std::move(glove)) {}

EmbeddingStore EmbeddingStore::from_directory(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IoError(fmt::format("embedding directory '{}' does not exist", dir.string()));
  }
  std::optional<fs::path> bin;
  std::optional<fs::path> txt;
  std::vector<fs::path> bins;
  std::vector<fs::path> txts;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension();
    if (ext == ".bin") bins.push_back(entry.path());
    if (ext == ".txt") txts.push_back(entry.path());
  }
  std::sort(bins.begin(), bins.end());
  std::sort(txts.begin(), txts.end());
  const auto pick = [](const std::vector<fs::path>& files, std::string_view preferred) {
    std::optional<fs::path> out;
    for (const auto& f : files) {
      if (f.filename() == preferred) return std::optional<fs::path>(f);
    }
    if (files.size() == 1) out = files.front();
    return out;
  };
  bin = pick(bins, "GoogleNews-vectors-negative300.bin");
  txt = pick(txts, "glove.840B.300d.txt");
  return EmbeddingStore(std::move(bin), std::move(txt));
}

std::shared_ptr<const EmbeddingTable> EmbeddingStore::load(
    const std::optional<fs::path>& path, std::shared_ptr<const EmbeddingTable>& cache,
    std::span<const std::string> vocab, std::string_view what) {
  if (cache) return cache;
  if (!path) throw ValidationError(fmt::format("no {} embedding file configured", what));
  const WordFilter keep(vocab.begin(), vocab.end());
  spdlog::info("loading {} vectors from {}", what, path->string());
  cache = std::make_shared<const EmbeddingTable>(load_embeddings(*path, &keep));
  spdlog::info("{} of {} vocabulary words found", cache->size(), keep.size());
  return cache;
}

std::shared_ptr<const EmbeddingTable> EmbeddingStore::word2vec(
    std::span<const std::string> vocab) {
  return load(word2vec_path_, word2vec_, vocab, "word2vec");
}

std::shared_ptr<const EmbeddingTable> EmbeddingStore::glove(std::span<const std::string> vocab) {
  return load(glove_path_, glove_, vocab, "glove");
}

std::size_t pad_length(const ModelConfig& model, const Dataset& dataset) noexcept {
  return std::max(dataset.max_len(), model.max_region());
}

SentenceEncoding build_encoding(const ExperimentConfig& config, const Dataset& dataset,
                                EmbeddingStore* store) {
  const std::vector<std::string> vocab = vocabulary(dataset);
  const std::size_t pad_to = pad_length(config.model, dataset);
  const Rng rng(config.embedding_seed);
  const auto need_store = [&]() -> EmbeddingStore& {
    if (store == nullptr) {
      throw ValidationError(
          fmt::format("input '{}' needs pre-trained embeddings", to_string(config.input)));
    }
    return *store;
  };
  switch (config.input) {
    case InputRepr::kWord2Vec:
      return SentenceEncoding::pretrained({need_store().word2vec(vocab)}, vocab, rng, pad_to);
    case InputRepr::kGlove:
      return SentenceEncoding::pretrained({need_store().glove(vocab)}, vocab, rng, pad_to);
    case InputRepr::kConcat: {
      auto& s = need_store();
      return SentenceEncoding::pretrained({s.word2vec(vocab), s.glove(vocab)}, vocab, rng,
                                          pad_to);
    }
    case InputRepr::kOneHot:
      return SentenceEncoding::onehot(vocab, pad_to);
    case InputRepr::kRandom:
      return SentenceEncoding::random(config.random_dim, vocab, rng, pad_to);
  }
  throw ValidationError("unknown input representation");
}

}  // namespace sentcnn
