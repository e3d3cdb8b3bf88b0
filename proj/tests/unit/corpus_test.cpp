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
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sentcnn/corpus.hpp"
#include "sentcnn/error.hpp"
#include "test_util.hpp"

namespace sentcnn {
namespace {

using Tokens = std::vector<std::string>;
using sentcnn::testing::TempDir;
using sentcnn::testing::write_file;

TEST(CleanText, Examples) {
  EXPECT_EQ(clean_text("Hello"), (Tokens{"hello"}));
  EXPECT_EQ(clean_text("It's great!"), (Tokens{"it", "'s", "great", "!"}));
  EXPECT_EQ(clean_text("don't stop?"), (Tokens{"do", "n't", "stop", "?"}));
}

TEST(CleanText, ContractionsAndPunctuation) {
  EXPECT_EQ(clean_text("we've they're I'd you'll"),
            (Tokens{"we", "'ve", "they", "'re", "i", "'d", "you", "'ll"}));
  EXPECT_EQ(clean_text("(a,b)"), (Tokens{"(", "a", ",", "b", ")"}));
  EXPECT_EQ(clean_text("  semi;colon -- dash\t\ttab  "),
            (Tokens{"semi", "colon", "dash", "tab"}));
  EXPECT_EQ(clean_text("IT'S"), (Tokens{"it", "'s"}));
  EXPECT_TRUE(clean_text("").empty());
  EXPECT_TRUE(clean_text("--- ...").empty());
}

TEST(CleanText, NonAsciiBytesBecomeSpaces) {
  EXPECT_EQ(clean_text("caf\xc3\xa9 noir"), (Tokens{"caf", "noir"}));
}

TEST(CleanText, IdempotentOnJoinedOutput) {
  const std::string alphabet = "abcXYZ019 ',!?()-.;:\"'stvendrl\t";
  Rng rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string raw;
    const std::size_t len = rng.below(40);
    for (std::size_t i = 0; i < len; ++i) raw += alphabet[rng.below(alphabet.size())];
    const Tokens once = clean_text(raw);
    std::string joined;
    for (const auto& t : once) joined += (joined.empty() ? "" : " ") + t;
    EXPECT_EQ(clean_text(joined), once) << "input: " << raw;
  }
}

TEST(Dataset, ComputesLengths) {
  Dataset ds({{{"a", "b"}, 0}, {{"c"}, 1}, {{"d", "e", "f"}, 1}}, {"neg", "pos"});
  EXPECT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.max_len(), 3u);
  EXPECT_DOUBLE_EQ(ds.avg_len(), 2.0);
  EXPECT_EQ(ds.class_counts(), (std::vector<std::size_t>{1, 2}));
  const std::vector<std::size_t> pick{2, 0};
  const Dataset sub = ds.subset(pick);
  EXPECT_EQ(sub[0], ds[2]);
  EXPECT_EQ(sub.class_names(), ds.class_names());
}

TEST(Dataset, RejectsBadInput) {
  EXPECT_THROW(Dataset({{{"a"}, 2}, {{"b"}, 0}}, {"x", "y"}), ValidationError);
  EXPECT_THROW(Dataset({{{}, 0}, {{"b"}, 1}}, {"x", "y"}), ValidationError);
  EXPECT_NO_THROW(Dataset({{{"a"}, 0}}, {"x", "y"}));
}

TEST(Balance, RejectsEmptyClass) {
  const Dataset ds({{{"a"}, 0}, {{"b"}, 0}}, {"x", "y"});
  Rng rng(0);
  EXPECT_THROW(undersample_balance(ds, rng), ValidationError);
}

TEST(Loaders, PolarityPair) {
  TempDir dir;
  const auto pos = write_file(dir / "p.txt", "good film\nGreat!\n\nlovely , really\n");
  const auto neg = write_file(dir / "n.txt", "bad\r\n... \nawful film\n");
  const Dataset ds = load_polarity_pair(pos, neg);
  EXPECT_EQ(ds.size(), 5u);
  EXPECT_EQ(ds.class_names(), (std::vector<std::string>{"neg", "pos"}));
  EXPECT_EQ(ds.class_counts(), (std::vector<std::size_t>{2, 3}));
  std::size_t positives = 0;
  for (const auto& s : ds.sentences()) {
    if (s.tokens == Tokens{"great", "!"}) EXPECT_EQ(s.label, 1u);
    if (s.tokens == Tokens{"bad"}) EXPECT_EQ(s.label, 0u);
    positives += s.label;
  }
  EXPECT_EQ(positives, 3u);
  EXPECT_THROW(load_polarity_pair(dir / "missing.txt", neg), IoError);
}

TEST(Loaders, TrecCoarseLabels) {
  TempDir dir;
  const auto path = write_file(dir / "trec.txt",
                               "DESC:manner How did serfdom develop ?\n"
                               "NUM:date When was Ozzy born ?\n"
                               "HUM:ind Who killed Gandhi ?\n");
  const Dataset ds = load_trec(path);
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.num_classes(), 6u);
  EXPECT_EQ(ds.class_names()[ds[0].label], "DESC");
  EXPECT_EQ(ds.class_names()[ds[1].label], "NUM");
  EXPECT_EQ(ds[0].tokens, (Tokens{"how", "did", "serfdom", "develop", "?"}));
}

TEST(Loaders, TrecRejectsUnknownLabel) {
  TempDir dir;
  const auto path = write_file(dir / "trec.txt", "DESC:manner ok ?\nFOO:bar what\n");
  try {
    load_trec(path);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Loaders, TsvLabels) {
  TempDir dir;
  const auto path = write_file(dir / "d.tsv", "pos\tnice one\nneg\tnot nice\nneu\tfine\n");
  const Dataset ds = load_tsv(path);
  EXPECT_EQ(ds.class_names(), (std::vector<std::string>{"neg", "neu", "pos"}));
  EXPECT_EQ(ds[0].label, 2u);
  EXPECT_THROW(load_tsv(path, std::vector<std::string>{"neg", "pos"}), FormatError);
  const auto bad = write_file(dir / "bad.tsv", "pos\tok\nno tab here\n");
  try {
    load_tsv(bad);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

Dataset synthetic(const std::vector<std::size_t>& counts, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LabeledSentence> out;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    names.push_back("c" + std::to_string(c));
    for (std::size_t i = 0; i < counts[c]; ++i) {
      out.push_back({{"w" + std::to_string(rng.below(1000)), "c" + std::to_string(c)}, c});
    }
  }
  std::span<LabeledSentence> view(out);
  rng.shuffle(view);
  return Dataset(std::move(out), std::move(names));
}

TEST(Balance, EqualizesToMinimum) {
  const Dataset ds = synthetic({100, 30}, 1);
  Rng rng(4);
  const Dataset bal = undersample_balance(ds, rng);
  EXPECT_EQ(bal.class_counts(), (std::vector<std::size_t>{30, 30}));
  Rng again(4);
  EXPECT_EQ(undersample_balance(ds, again).sentences(), bal.sentences());
}

TEST(Balance, BalancedInputKeepsMultiset) {
  const Dataset ds = synthetic({50, 50}, 2);
  Rng rng(9);
  const Dataset bal = undersample_balance(ds, rng);
  auto key = [](const LabeledSentence& s) { return std::make_pair(s.tokens, s.label); };
  std::multiset<std::pair<Tokens, std::size_t>> a;
  std::multiset<std::pair<Tokens, std::size_t>> b;
  for (const auto& s : ds.sentences()) a.insert(key(s));
  for (const auto& s : bal.sentences()) b.insert(key(s));
  EXPECT_EQ(a, b);
}

TEST(Balance, PropertyCountsEqualMinimum) {
  Rng meta(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> counts(2 + meta.below(4));
    for (auto& c : counts) c = 1 + meta.below(40);
    const Dataset ds = synthetic(counts, trial);
    Rng rng(trial);
    const Dataset bal = undersample_balance(ds, rng);
    const std::size_t lo = *std::min_element(counts.begin(), counts.end());
    for (std::size_t c : bal.class_counts()) EXPECT_EQ(c, lo);
  }
}

TEST(Vocabulary, FirstOccurrenceOrder) {
  Dataset ds({{{"b", "a", "b"}, 0}, {{"c", "a"}, 1}}, {"x", "y"});
  EXPECT_EQ(vocabulary(ds), (Tokens{"b", "a", "c"}));
}

TEST(Folds, OneOfEachClassPerFold) {
  const Dataset ds = synthetic({5, 5}, 3);
  const FoldPlan plan = make_folds(ds, 5, 17);
  for (std::size_t f = 0; f < 5; ++f) {
    const auto test = plan.test_indices(f);
    ASSERT_EQ(test.size(), 2u);
    EXPECT_NE(ds[test[0]].label, ds[test[1]].label);
  }
  EXPECT_EQ(make_folds(ds, 5, 17), plan);
}

TEST(Folds, RejectsTooSmallClasses) {
  const Dataset ds = synthetic({5, 3}, 3);
  EXPECT_THROW(make_folds(ds, 4, 0), ValidationError);
  EXPECT_THROW(make_folds(ds, 1, 0), ValidationError);
}

TEST(Folds, PropertyPartitionAndStratification) {
  Rng meta(2718);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + meta.below(9);
    std::vector<std::size_t> counts(2 + meta.below(5));
    for (auto& c : counts) c = k + meta.below(60);
    const Dataset ds = synthetic(counts, 1000 + trial);
    const std::uint64_t seed = meta.next();
    const FoldPlan plan = make_folds(ds, k, seed);
    ASSERT_EQ(plan.size(), ds.size());

    std::vector<int> seen(ds.size(), 0);
    for (std::size_t f = 0; f < k; ++f) {
      const auto test = plan.test_indices(f);
      const auto train = plan.train_indices(f);
      EXPECT_EQ(test.size() + train.size(), ds.size());
      std::vector<std::size_t> per_class(counts.size(), 0);
      for (std::size_t i : test) {
        ++seen[i];
        ++per_class[ds[i].label];
      }
      for (std::size_t c = 0; c < counts.size(); ++c) {
        EXPECT_GE(per_class[c], counts[c] / k);
        EXPECT_LE(per_class[c], (counts[c] + k - 1) / k);
      }
    }
    for (int s : seen) ASSERT_EQ(s, 1);
    EXPECT_EQ(make_folds(ds, k, seed), plan);
  }
}

}  // namespace
}  // namespace sentcnn
