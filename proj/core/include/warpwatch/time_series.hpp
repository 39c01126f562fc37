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

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace warpwatch {

enum class Label { kNormal, kAnomalous, kUnlabeled };

std::string_view to_string(Label label) noexcept;
std::optional<Label> parse_label(std::string_view token) noexcept;

struct TimeSeries {
  std::string id;
  std::vector<double> values;
  Label label = Label::kUnlabeled;

  std::size_t size() const noexcept { return values.size(); }
  bool operator==(const TimeSeries&) const = default;
};

/// A lattice position: row indexes the first (representative) series, col the
/// second (query / training) series. Both 0-based.
struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;

  auto operator<=>(const Cell&) const = default;
};

/// Monotone alignment from (0,0) to (m-1,n-1) with steps in {(0,1),(1,1),(1,0)}.
using WarpingPath = std::vector<Cell>;

/// Throws kEmptySeries / kNonFiniteSample.
void validate_series(const TimeSeries& series);

/// Structural check of every WarpingPath invariant for an m x n lattice.
bool is_valid_path(const WarpingPath& path, std::size_t rows, std::size_t cols);

}  // namespace warpwatch
