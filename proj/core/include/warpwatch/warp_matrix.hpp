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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "warpwatch/dtw.hpp"
#include "warpwatch/time_series.hpp"

namespace warpwatch {

/// Direction of the step that arrives at a path position.
///   kRight: column advanced only (->)
///   kDiag:  both advanced
///   kUp:    row advanced only
enum class Direction : std::uint8_t { kRight = 0, kDiag = 1, kUp = 2 };

inline constexpr std::size_t kDirections = 3;

/// Per-cell accumulator of arriving-step directions, [right, diag, up].
struct DirectionCounts {
  std::array<std::uint32_t, kDirections> counts{};

  std::uint32_t right() const noexcept { return counts[0]; }
  std::uint32_t diag() const noexcept { return counts[1]; }
  std::uint32_t up() const noexcept { return counts[2]; }

  std::uint32_t operator[](Direction d) const noexcept {
    return counts[static_cast<std::size_t>(d)];
  }

  std::uint64_t total() const noexcept {
    return std::uint64_t{counts[0]} + counts[1] + counts[2];
  }

  std::uint64_t dot(const DirectionCounts& other) const noexcept {
    return std::uint64_t{counts[0]} * other.counts[0] +
           std::uint64_t{counts[1]} * other.counts[1] +
           std::uint64_t{counts[2]} * other.counts[2];
  }

  bool operator==(const DirectionCounts&) const = default;
};

/// Direction of the step into path[i]; nullopt for i == 0 or a malformed step.
std::optional<Direction> step_direction(const WarpingPath& path, std::size_t i);

/// One-hot encoding of the step into path[i]. Throws kIndexOutOfRange for
/// i == 0 or i >= |path|.
DirectionCounts encode_step(const WarpingPath& path, std::size_t i);

/// m x n grid of DirectionCounts accumulated over warping paths.
class WarpingMatrix {
 public:
  WarpingMatrix() = default;
  WarpingMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool contains(Cell c) const noexcept { return c.row < rows_ && c.col < cols_; }

  const DirectionCounts& at(Cell c) const;
  void set(Cell c, const DirectionCounts& value);

  /// Sum of the three counters at c. Throws kIndexOutOfRange.
  std::uint64_t count_paths(Cell c) const;

  /// Counter lookup that treats positions outside the grid as empty.
  DirectionCounts at_or_empty(Cell c) const noexcept {
    return contains(c) ? cells_[c.row * cols_ + c.col] : DirectionCounts{};
  }

  /// In-place accumulation. Throws kPathOutOfBounds before touching anything
  /// if some step lies outside the grid.
  void add_path(const WarpingPath& path);
  /// In-place subtraction, each counter clamped at zero.
  void subtract_path(const WarpingPath& path);

  bool operator==(const WarpingMatrix&) const = default;

 private:
  void check_fits(const WarpingPath& path) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<DirectionCounts> cells_;
};

WarpingMatrix build_matrix(std::span<const WarpingPath> paths, std::size_t rows,
                           std::size_t cols);

/// 1 where count_paths > 0; (0,0) is always allowed.
ConstraintMask derive_mask(const WarpingMatrix& matrix);

}  // namespace warpwatch
