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

#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <type_traits>

#include <fmt/format.h>

#include "sentcnn/error.hpp"
#include "sentcnn/sweep.hpp"
#include "text_util.hpp"

namespace sentcnn {

namespace fs = std::filesystem;

namespace {

// Parses RFC 4180 records. Quoted fields may contain commas, doubled quotes
// and line breaks. Each record carries the line it starts on.
std::vector<std::pair<std::size_t, std::vector<std::string>>> parse_csv(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t record_line = line;
    std::vector<std::string> fields;
    std::string field;
    bool in_record = true;
    while (in_record) {
      if (i < text.size() && text[i] == '"') {
        ++i;
        while (true) {
          if (i >= text.size()) {
            throw FormatError(fmt::format("line {}: unterminated quoted field", record_line),
                              record_line);
          }
          const char c = text[i++];
          if (c == '"') {
            if (i < text.size() && text[i] == '"') {
              field += '"';
              ++i;
            } else {
              break;
            }
          } else {
            if (c == '\n') ++line;
            field += c;
          }
        }
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw FormatError(fmt::format("line {}: text after closing quote", line), line);
        }
      } else {
        while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') {
            throw FormatError(fmt::format("line {}: stray quote", line), line);
          }
          field += text[i++];
        }
      }
      fields.push_back(std::move(field));
      field.clear();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '\r') ++i;
      if (i < text.size() && text[i] == '\n') {
        ++i;
        ++line;
      }
      in_record = false;
    }
    records.emplace_back(record_line, std::move(fields));
  }
  return records;
}

template <typename T>
T parse_field(const std::string& text, std::size_t line, std::string_view column) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      return detail::parse_double(text, column);
    } else {
      return static_cast<T>(detail::parse_u64(text, column));
    }
  } catch (const ValidationError& e) {
    throw FormatError(fmt::format("line {}: {}", line, e.what()), line);
  }
}

void append_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
  out.flush();
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

}  // namespace

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> parse_csv_line(std::string_view line) {
  auto records = parse_csv(line);
  if (records.empty()) return {""};
  if (records.size() != 1) throw FormatError("expected a single CSV record", 1);
  return std::move(records.front().second);
}

std::string format_result_row(const TrialResult& row) {
  return fmt::format("{},{},{},{},{},{},{:.4f},{:.3f},{}\n", csv_field(row.dataset),
                     csv_field(row.axis), csv_field(row.value), row.replication, row.fold,
                     csv_field(row.metric), row.score, row.seconds, row.seed);
}

void write_results(std::span<const TrialResult> rows, const fs::path& path) {
  std::error_code ec;
  const bool fresh = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
  std::string text;
  if (fresh) text = fmt::format("{}\n", kResultsHeader);
  for (const auto& row : rows) text += format_result_row(row);
  append_text(path, text);
}

std::vector<TrialResult> read_results(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open results '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto records = parse_csv(text);
  std::vector<TrialResult> rows;
  if (records.empty()) return rows;
  std::string header;
  for (std::size_t i = 0; i < records.front().second.size(); ++i) {
    if (i > 0) header += ',';
    header += records.front().second[i];
  }
  if (header != kResultsHeader) {
    throw FormatError(fmt::format("{}: unexpected header '{}'", path.string(), header), 1);
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& [line, f] = records[r];
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != 9) {
      throw FormatError(
          fmt::format("{}:{}: expected 9 fields, found {}", path.string(), line, f.size()), line);
    }
    TrialResult row;
    row.dataset = f[0];
    row.axis = f[1];
    row.value = f[2];
    row.replication = parse_field<std::size_t>(f[3], line, "replication");
    row.fold = parse_field<std::size_t>(f[4], line, "fold");
    row.metric = f[5];
    row.score = parse_field<double>(f[6], line, "score");
    row.seconds = parse_field<double>(f[7], line, "seconds");
    row.seed = parse_field<std::uint64_t>(f[8], line, "seed");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AggregateRow> aggregate(std::span<const TrialResult> rows) {
  std::vector<std::string> order;
  std::map<std::string, std::map<std::size_t, std::map<std::size_t, double>>> scores;
  for (const auto& row : rows) {
    auto [it, inserted] = scores.try_emplace(row.value);
    if (inserted) order.push_back(row.value);
    it->second[row.replication][row.fold] = row.score;
  }
  std::vector<AggregateRow> out;
  for (const auto& value : order) {
    std::vector<double> means;
    for (const auto& [rep, folds] : scores[value]) {
      double sum = 0.0;
      for (const auto& [fold, score] : folds) sum += score;
      means.push_back(sum / static_cast<double>(folds.size()));
    }
    const auto report = ReplicationReport::from(means, Metric::kAccuracy);
    out.push_back({value, std::move(means), report.mean, report.min, report.max});
  }
  return out;
}

void write_aggregate(std::span<const AggregateRow> rows, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << kAggregateHeader << '\n';
  for (const auto& row : rows) {
    out << fmt::format("{},{:.4f},{:.4f},{:.4f}\n", csv_field(row.value), row.mean, row.min,
                       row.max);
  }
  out.flush();
  if (!out) throw IoError(fmt::format("write failed for '{}'", path.string()));
}

fs::path aggregate_path(const fs::path& results_path) {
  fs::path out = results_path;
  const std::string ext = results_path.has_extension() ? results_path.extension().string() : ".csv";
  out.replace_filename(results_path.stem().string() + ".agg" + ext);
  return out;
}

}  // namespace sentcnn
