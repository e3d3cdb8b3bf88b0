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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sentcnn {

// Bad argument or configuration value. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input file. Carries the byte offset (or line number) of the
// first offending byte when known.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::uint64_t position)
      : std::runtime_error(what), position_(position) {}
  explicit FormatError(const std::string& what)
      : std::runtime_error(what), position_(0) {}

  std::uint64_t position() const noexcept { return position_; }

 private:
  std::uint64_t position_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sentcnn
