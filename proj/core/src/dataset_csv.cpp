// Copyright 2026 The WarpWatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "warpwatch/dataset_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "warpwatch/errors.hpp"

namespace warpwatch {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void bad_row(std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line_no) + ": " + why);
}

bool skip_line(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

std::vector<TimeSeries> read_dataset(std::istream& in) {
  std::vector<TimeSeries> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() < 3) bad_row(line_no, "expected id,label and at least one sample");
    if (fields[0].empty()) bad_row(line_no, "empty series id");

    TimeSeries series;
    series.id = std::string(fields[0]);
    auto label = parse_label(fields[1]);
    if (!label) {
      throw Error(ErrorCode::kUnknownLabelToken,
                  "line " + std::to_string(line_no) + ": label '" +
                      std::string(fields[1]) + "'");
    }
    series.label = *label;
    series.values.reserve(fields.size() - 2);
    for (std::size_t k = 2; k < fields.size(); ++k) {
      const auto token = fields[k];
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() ||
          !std::isfinite(value)) {
        bad_row(line_no, "sample " + std::to_string(k - 1) + " '" + std::string(token) +
                             "' is not a finite number");
      }
      series.values.push_back(value);
    }
    out.push_back(std::move(series));
  }
  return out;
}

std::vector<TimeSeries> read_dataset(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kMalformedRow, "cannot open " + file.string());
  return read_dataset(in);
}

void write_dataset(std::ostream& out, std::span<const TimeSeries> series) {
  char buffer[64];
  for (const auto& s : series) {
    out << s.id << ',' << to_string(s.label);
    for (double v : s.values) {
      const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
      out << ',' << std::string_view(buffer, static_cast<std::size_t>(ptr - buffer));
    }
    out << '\n';
  }
}

void write_dataset(const std::filesystem::path& file, std::span<const TimeSeries> series) {
  std::ofstream out(file);
  if (!out) throw Error(ErrorCode::kInvalidConfig, "cannot write " + file.string());
  write_dataset(out, series);
}

std::map<std::string, std::string> read_partition(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kMalformedRow, "cannot open " + file.string());
  std::map<std::string, std::string> partition;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      bad_row(line_no, "expected id,group");
    }
    partition[std::string(fields[0])] = std::string(fields[1]);
  }
  return partition;
}

}  // namespace warpwatch
