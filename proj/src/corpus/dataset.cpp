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
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "sentcnn/corpus.hpp"
#include "sentcnn/error.hpp"

namespace sentcnn {

namespace {

constexpr std::array<std::string_view, 6> kTrecCoarse = {"ABBR", "DESC", "ENTY",
                                                         "HUM",  "LOC",  "NUM"};

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(line, number);
  }
  if (in.bad()) throw IoError(fmt::format("read error on '{}'", path.string()));
}

void warn_dropped(const std::filesystem::path& path, std::size_t dropped) {
  if (dropped > 0) {
    spdlog::warn("{}: dropped {} line(s) that were empty after cleaning",
                 path.string(), dropped);
  }
}

void require_all_classes(const Dataset& d, const std::string& source) {
  const auto counts = d.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) {
      throw FormatError(fmt::format("{}: class '{}' has no examples", source,
                                    d.class_names()[c]));
    }
  }
}

void append_lines(const std::filesystem::path& path, std::size_t label,
                  std::vector<LabeledSentence>& out) {
  std::size_t dropped = 0;
  for_each_line(path, [&](const std::string& line, std::size_t) {
    auto tokens = clean_text(line);
    if (tokens.empty()) {
      ++dropped;
      return;
    }
    out.push_back({std::move(tokens), label});
  });
  warn_dropped(path, dropped);
}

}  // namespace

Dataset::Dataset(std::vector<LabeledSentence> sentences,
                 std::vector<std::string> class_names)
    : sentences_(std::move(sentences)), class_names_(std::move(class_names)) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    const auto& s = sentences_[i];
    if (s.tokens.empty()) {
      throw ValidationError(fmt::format("sentence {} has no tokens", i));
    }
    if (s.label >= class_names_.size()) {
      throw ValidationError(fmt::format("sentence {} has label {} but only {} classes",
                                        i, s.label, class_names_.size()));
    }
    max_len_ = std::max(max_len_, s.tokens.size());
    total += s.tokens.size();
  }
  avg_len_ = sentences_.empty()
                 ? 0.0
                 : static_cast<double>(total) / static_cast<double>(sentences_.size());
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(class_names_.size(), 0);
  for (const auto& s : sentences_) ++counts[s.label];
  return counts;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<LabeledSentence> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= sentences_.size()) {
      throw ValidationError(fmt::format("subset index {} out of range", i));
    }
    picked.push_back(sentences_[i]);
  }
  return Dataset(std::move(picked), class_names_);
}

DatasetFormat parse_dataset_format(std::string_view name) {
  if (name == "polarity-pair") return DatasetFormat::kPolarityPair;
  if (name == "trec") return DatasetFormat::kTrec;
  if (name == "tsv") return DatasetFormat::kTsv;
  throw ValidationError(fmt::format("unknown dataset format '{}'", name));
}

std::string_view to_string(DatasetFormat format) noexcept {
  switch (format) {
    case DatasetFormat::kPolarityPair: return "polarity-pair";
    case DatasetFormat::kTrec: return "trec";
    case DatasetFormat::kTsv: return "tsv";
  }
  return "?";
}

std::span<const std::string_view> trec_coarse_labels() noexcept {
  return kTrecCoarse;
}

Dataset load_polarity_pair(const std::filesystem::path& pos,
                           const std::filesystem::path& neg) {
  std::vector<LabeledSentence> sentences;
  append_lines(pos, 1, sentences);
  append_lines(neg, 0, sentences);
  Dataset d(std::move(sentences), {"neg", "pos"});
  require_all_classes(d, pos.string() + " + " + neg.string());
  return d;
}

Dataset load_trec(const std::filesystem::path& path) {
  std::vector<LabeledSentence> sentences;
  std::size_t dropped = 0;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    if (line.find_first_not_of(" \t") == std::string::npos) return;
    const std::size_t colon = line.find(':');
    const std::size_t space = line.find(' ');
    if (colon == std::string::npos || (space != std::string::npos && space < colon)) {
      throw FormatError(
          fmt::format("{}:{}: expected 'LABEL:fine text'", path.string(), number),
          number);
    }
    const std::string_view coarse(line.data(), colon);
    const auto it = std::find(kTrecCoarse.begin(), kTrecCoarse.end(), coarse);
    if (it == kTrecCoarse.end()) {
      throw FormatError(fmt::format("{}:{}: unknown TREC label '{}'", path.string(),
                                    number, coarse),
                        number);
    }
    auto tokens = space == std::string::npos
                      ? std::vector<std::string>{}
                      : clean_text(std::string_view(line).substr(space + 1));
    if (tokens.empty()) {
      ++dropped;
      return;
    }
    sentences.push_back(
        {std::move(tokens), static_cast<std::size_t>(it - kTrecCoarse.begin())});
  });
  warn_dropped(path, dropped);
  std::vector<std::string> names(kTrecCoarse.begin(), kTrecCoarse.end());
  return Dataset(std::move(sentences), std::move(names));
}

Dataset load_tsv(const std::filesystem::path& path,
                 std::optional<std::vector<std::string>> class_names) {
  struct Row {
    std::string label;
    std::vector<std::string> tokens;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::size_t dropped = 0;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    if (line.find_first_not_of(" \t") == std::string::npos) return;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError(
          fmt::format("{}:{}: expected 'label<TAB>text'", path.string(), number),
          number);
    }
    auto tokens = clean_text(std::string_view(line).substr(tab + 1));
    if (tokens.empty()) {
      ++dropped;
      return;
    }
    rows.push_back({line.substr(0, tab), std::move(tokens), number});
  });
  warn_dropped(path, dropped);

  std::vector<std::string> names;
  if (class_names) {
    names = std::move(*class_names);
  } else {
    std::set<std::string> seen;
    for (const auto& r : rows) seen.insert(r.label);
    names.assign(seen.begin(), seen.end());
  }
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);

  std::vector<LabeledSentence> sentences;
  sentences.reserve(rows.size());
  for (auto& r : rows) {
    const auto it = index.find(r.label);
    if (it == index.end()) {
      throw FormatError(fmt::format("{}:{}: unknown label '{}'", path.string(),
                                    r.line, r.label),
                        r.line);
    }
    sentences.push_back({std::move(r.tokens), it->second});
  }
  Dataset d(std::move(sentences), std::move(names));
  require_all_classes(d, path.string());
  return d;
}

Dataset undersample_balance(const Dataset& dataset, Rng& rng) {
  if (dataset.num_classes() < 2) {
    throw ValidationError("undersample_balance: need at least two classes");
  }
  std::vector<std::vector<std::size_t>> by_class(dataset.num_classes());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    by_class[dataset[i].label].push_back(i);
  }
  std::size_t minority = dataset.size();
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    if (by_class[c].empty()) {
      throw ValidationError(fmt::format(
          "undersample_balance: class '{}' has no examples", dataset.class_names()[c]));
    }
    minority = std::min(minority, by_class[c].size());
  }
  std::vector<std::size_t> keep;
  keep.reserve(minority * by_class.size());
  for (auto& members : by_class) {
    // Partial Fisher-Yates: the first `minority` slots are a uniform sample.
    for (std::size_t i = 0; i < minority; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(members.size() - i));
      std::swap(members[i], members[j]);
      keep.push_back(members[i]);
    }
  }
  rng.shuffle(std::span<std::size_t>(keep));
  return dataset.subset(keep);
}

std::vector<std::string> vocabulary(const Dataset& dataset) {
  std::vector<std::string> words;
  std::unordered_set<std::string_view> seen;
  for (const auto& s : dataset.sentences()) {
    for (const auto& t : s.tokens) {
      if (seen.insert(t).second) words.push_back(t);
    }
  }
  return words;
}

}  // namespace sentcnn
