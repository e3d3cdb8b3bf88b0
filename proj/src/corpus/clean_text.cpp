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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "sentcnn/corpus.hpp"

namespace sentcnn {

namespace {

bool is_kept(char ch) noexcept {
  return (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '\'' ||
         ch == ',' || ch == '!' || ch == '?' || ch == '(' || ch == ')';
}

char lower(char ch) noexcept {
  return (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch;
}

// Inserts a space before every non-overlapping occurrence of `pattern`.
std::string space_before(const std::string& text, std::string_view pattern) {
  std::string out;
  out.reserve(text.size() + 8);
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = text.find(pattern, pos);
    if (hit == std::string::npos) break;
    out.append(text, pos, hit - pos);
    out.push_back(' ');
    out.append(pattern);
    pos = hit + pattern.size();
  }
  out.append(text, pos, std::string::npos);
  return out;
}

constexpr std::array<std::string_view, 6> kContractions = {
    "'s", "'ve", "n't", "'re", "'d", "'ll"};

}  // namespace

std::vector<std::string> clean_text(std::string_view raw) {
  std::string text;
  text.reserve(raw.size());
  for (char ch : raw) {
    const char c = lower(ch);
    text.push_back(is_kept(c) ? c : ' ');
  }
  for (std::string_view pattern : kContractions) {
    text = space_before(text, pattern);
  }

  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    switch (c) {
      case ' ':
        flush();
        break;
      case ',':
      case '!':
      case '?':
      case '(':
      case ')':
        flush();
        tokens.emplace_back(1, c);
        break;
      default:
        current.push_back(c);
    }
  }
  flush();
  return tokens;
}

}  // namespace sentcnn
