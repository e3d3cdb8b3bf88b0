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

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sentcnn/embeddings.hpp"
#include "sentcnn/error.hpp"
#include "sentcnn/numeric.hpp"
#include "test_util.hpp"

namespace sentcnn {
namespace {

using sentcnn::testing::read_file;
using sentcnn::testing::TempDir;
using sentcnn::testing::write_file;

std::string float_bytes(std::initializer_list<float> values) {
  std::string out;
  for (float v : values) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    out.append(buf, 4);
  }
  return out;
}

// Table whose entries are exactly representable as float32.
EmbeddingTable float_table(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> words;
  Mat vectors(n, dim);
  for (std::size_t i = 0; i < n; ++i) {
    words.push_back("w" + std::to_string(i) + (i % 7 == 0 ? "\xc3\xa9" : ""));
    for (auto& x : vectors.row(i)) x = static_cast<float>(rng.uniform(-1.0, 1.0));
  }
  return EmbeddingTable(std::move(words), std::move(vectors));
}

TEST(EmbeddingTable, LookupAndValidation) {
  const EmbeddingTable t({"a", "b"}, Mat(2, 3, std::vector<double>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(t.dim(), 3u);
  EXPECT_EQ(t.find("b"), 1u);
  EXPECT_FALSE(t.find("c").has_value());
  EXPECT_EQ((*t.vector("b"))[2], 6.0);
  EXPECT_THROW(EmbeddingTable({"a", "a"}, Mat(2, 3)), ValidationError);
  EXPECT_THROW(EmbeddingTable({"a"}, Mat(2, 3)), ValidationError);
  EXPECT_THROW(EmbeddingTable(0), ValidationError);
}

TEST(Word2Vec, ParsesHandWrittenFile) {
  TempDir dir;
  const std::string bytes = "2 3\n" + std::string("ab ") + float_bytes({0.5f, -1.0f, 2.0f}) +
                            "\n" + "cd " + float_bytes({1.5f, 0.25f, -0.125f}) + "\n";
  const auto path = write_file(dir / "v.bin", bytes);
  const EmbeddingTable t = load_word2vec_bin(path);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.dim(), 3u);
  EXPECT_EQ(t.words(), (std::vector<std::string>{"ab", "cd"}));
  EXPECT_EQ(t.vectors()(1, 2), -0.125);
}

TEST(Word2Vec, RecordsWithoutNewlines) {
  TempDir dir;
  const std::string bytes =
      "2 1\n" + std::string("ab ") + float_bytes({0.5f}) + "cd " + float_bytes({1.5f});
  const EmbeddingTable t = load_word2vec_bin(write_file(dir / "v.bin", bytes));
  EXPECT_EQ(t.words(), (std::vector<std::string>{"ab", "cd"}));
  EXPECT_EQ(t.vectors()(1, 0), 1.5);
}

TEST(Word2Vec, RoundTripIsIdentity) {
  TempDir dir;
  const EmbeddingTable table = float_table(100, 7, 3);
  save_word2vec_bin(table, dir / "t.bin");
  EXPECT_EQ(load_word2vec_bin(dir / "t.bin"), table);
  save_word2vec_bin(table, dir / "t2.bin");
  EXPECT_EQ(read_file(dir / "t.bin"), read_file(dir / "t2.bin"));
}

TEST(Word2Vec, EmptyTableWritesHeaderOnly) {
  TempDir dir;
  save_word2vec_bin(EmbeddingTable(4), dir / "e.bin");
  EXPECT_EQ(read_file(dir / "e.bin"), "0 4\n");
  EXPECT_EQ(load_word2vec_bin(dir / "e.bin").size(), 0u);
}

TEST(Word2Vec, FilterKeepsRequestedWords) {
  TempDir dir;
  const EmbeddingTable table = float_table(20, 3, 4);
  save_word2vec_bin(table, dir / "t.bin");
  const WordFilter keep{"w1", "w5", "missing"};
  const EmbeddingTable t = load_word2vec_bin(dir / "t.bin", &keep);
  EXPECT_EQ(t.words(), (std::vector<std::string>{"w1", "w5"}));
  EXPECT_EQ((*t.vector("w5"))[0], table.vectors()(5, 0));
}

TEST(Word2Vec, TruncatedVectorReportsOffset) {
  TempDir dir;
  // header 4 bytes; record 0 spans [4, 20); word #1 starts at 20, its
  // vector at 23.
  const std::string full = "2 3\n" + std::string("ab ") + float_bytes({0.5f, -1.0f, 2.0f}) +
                           "\n" + "cd " + float_bytes({1.5f, 0.25f, -0.125f}) + "\n";
  const auto path = write_file(dir / "t.bin", full.substr(0, 23 + 5));
  try {
    load_word2vec_bin(path);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.position(), 23u);
    EXPECT_NE(std::string(e.what()).find("#1"), std::string::npos) << e.what();
  }
}

TEST(Word2Vec, HeaderMismatchIsFormatError) {
  TempDir dir;
  const std::string rec = std::string("ab ") + float_bytes({0.5f});
  EXPECT_THROW(load_word2vec_bin(write_file(dir / "a.bin", "3 1\n" + rec)), FormatError);
  EXPECT_THROW(load_word2vec_bin(write_file(dir / "b.bin", "1 1\n" + rec + rec)), FormatError);
  EXPECT_THROW(load_word2vec_bin(write_file(dir / "c.bin", "x 1\n" + rec)), FormatError);
  EXPECT_THROW(load_word2vec_bin(dir / "nope.bin"), IoError);
}

TEST(Glove, ParsesText) {
  TempDir dir;
  const auto path = write_file(dir / "g.txt", "the 0.5 1 -2\ncat 0.25 0 1e-3\n");
  const EmbeddingTable t = load_glove_txt(path);
  EXPECT_EQ(t.dim(), 3u);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.vectors()(0, 0), 0.5);
  EXPECT_EQ(t.vectors()(1, 2), 1e-3);
}

TEST(Glove, RaggedLineReportsLineNumber) {
  TempDir dir;
  const auto path = write_file(dir / "g.txt", "the 0.5 1 -2\ncat 0.25 0\n");
  try {
    load_glove_txt(path);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Glove, DispatchByExtension) {
  TempDir dir;
  write_file(dir / "g.txt", "a 1 2\n");
  EXPECT_EQ(load_embeddings(dir / "g.txt").dim(), 2u);
  save_word2vec_bin(float_table(3, 2, 1), dir / "w.bin");
  EXPECT_EQ(load_embeddings(dir / "w.bin").size(), 3u);
}

TEST(SentenceEncoding, ZeroPadding) {
  const std::vector<std::string> vocab{"x", "y"};
  const auto enc = SentenceEncoding::random(3, vocab, Rng(1), 5);
  const std::vector<std::string> tokens{"y", "x"};
  const Mat m = build_sentence_matrix(tokens, enc);
  ASSERT_EQ(m.rows(), 5u);
  ASSERT_EQ(m.cols(), 3u);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_EQ(m(0, c), enc.lookup()(1, c));
    EXPECT_EQ(m(1, c), enc.lookup()(0, c));
    for (std::size_t r = 2; r < 5; ++r) EXPECT_EQ(m(r, c), 0.0);
  }
  const std::vector<std::string> long_tokens(6, "x");
  EXPECT_THROW(build_sentence_matrix(long_tokens, enc), ValidationError);
}

TEST(SentenceEncoding, RandomRowsInRange) {
  std::vector<std::string> vocab;
  for (int i = 0; i < 50; ++i) vocab.push_back("v" + std::to_string(i));
  const auto enc = SentenceEncoding::random(10, vocab, Rng(2), 4);
  for (double x : enc.lookup().flat()) {
    EXPECT_GE(x, kRandomInitLow);
    EXPECT_LT(x, kRandomInitHigh);
  }
  EXPECT_EQ(SentenceEncoding::random(10, vocab, Rng(2), 4).lookup(), enc.lookup());
}

TEST(SentenceEncoding, ConcatenatedTablesAndOov) {
  const auto t1 = std::make_shared<const EmbeddingTable>(float_table(4, 300, 1));
  const auto t2 = std::make_shared<const EmbeddingTable>(EmbeddingTable(
      std::vector<std::string>{"w1"}, Mat(1, 300, 0.75)));
  const std::vector<std::string> vocab{"w1", "w2", "unknown"};
  const auto enc = SentenceEncoding::pretrained({t1, t2}, vocab, Rng(3), 3);
  EXPECT_EQ(enc.dim(), 600u);
  const Mat m = enc.matrix(enc.ids(vocab));
  EXPECT_EQ(m.cols(), 600u);
  for (std::size_t c = 0; c < 300; ++c) {
    EXPECT_EQ(m(0, c), t1->vectors()(1, c));
    EXPECT_EQ(m(0, 300 + c), 0.75);
    EXPECT_EQ(m(1, c), t1->vectors()(2, c));
    EXPECT_GE(m(1, 300 + c), kRandomInitLow);
    EXPECT_LT(m(1, 300 + c), kRandomInitHigh);
  }
  // The same unknown word always maps to the same row.
  const std::vector<std::string> again{"unknown", "unknown"};
  const Mat m2 = enc.matrix(enc.ids(again));
  for (std::size_t c = 0; c < 600; ++c) {
    EXPECT_EQ(m2(0, c), m(2, c));
    EXPECT_EQ(m2(1, c), m(2, c));
  }
}

TEST(SentenceEncoding, OneHotIndicator) {
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f", "g"};
  const auto enc = SentenceEncoding::onehot(vocab, 3);
  EXPECT_EQ(enc.dim(), 7u);
  const std::vector<std::string> tokens{"c", "zzz"};
  const Mat m = build_sentence_matrix(tokens, enc);
  EXPECT_EQ(std::vector<double>(m.row(0).begin(), m.row(0).end()),
            (std::vector<double>{0, 0, 1, 0, 0, 0, 0}));
  for (double x : m.row(1)) EXPECT_EQ(x, 0.0);
  for (double x : m.row(2)) EXPECT_EQ(x, 0.0);
}

TEST(SentenceEncoding, WithPadToSharesVectors) {
  const std::vector<std::string> vocab{"a", "b"};
  const auto enc = SentenceEncoding::random(4, vocab, Rng(5), 2);
  const auto wider = enc.with_pad_to(9);
  EXPECT_EQ(wider.pad_to(), 9u);
  EXPECT_EQ(&wider.lookup(), &enc.lookup());
}

}  // namespace
}  // namespace sentcnn
