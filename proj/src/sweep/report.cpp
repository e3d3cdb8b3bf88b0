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
#include <cmath>

#include <fmt/format.h>

#include "sentcnn/error.hpp"
#include "sentcnn/sweep.hpp"

namespace sentcnn {

std::string render_report(std::span<const AggregateRow> rows, std::string_view baseline_value) {
  const auto base = std::find_if(rows.begin(), rows.end(),
                                 [&](const AggregateRow& r) { return r.value == baseline_value; });
  if (base == rows.end()) {
    throw ValidationError(fmt::format("baseline value '{}' is not in the results", baseline_value));
  }
  std::vector<double> means;
  for (const auto& r : rows) means.push_back(r.mean);
  const auto change =
      percent_change(means, static_cast<std::size_t>(std::distance(rows.begin(), base)));

  std::vector<std::array<std::string, 3>> cells;
  cells.push_back({"value", "mean (min, max)", "change"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double pc = std::abs(change[i]) < 0.005 ? 0.0 : change[i];
    cells.push_back({rows[i].value,
                     fmt::format("{:.2f} ({:.2f}, {:.2f})", rows[i].mean, rows[i].min, rows[i].max),
                     fmt::format("{:+.2f}%", pc)});
  }
  std::array<std::size_t, 3> width{};
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < 3; ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : cells) {
    out += fmt::format("{:<{}}  {:<{}}  {:>{}}\n", row[0], width[0], row[1], width[1], row[2],
                       width[2]);
  }
  return out;
}

}  // namespace sentcnn
