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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "warpwatch/time_series.hpp"

namespace warpwatch {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Binary allow/forbid matrix over the DTW lattice. Each row keeps the
/// column extent of its allowed cells so that DTW only walks that extent.
class ConstraintMask {
 public:
  ConstraintMask() = default;
  ConstraintMask(std::size_t rows, std::size_t cols, bool fill = false);

  /// Diagonal band |i - j| <= half_width, clipped to the lattice.
  static ConstraintMask band(std::size_t rows, std::size_t cols,
                             std::size_t half_width);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool allowed(std::size_t row, std::size_t col) const noexcept {
    return row < rows_ && col < cols_ && bits_[row * cols_ + col] != 0;
  }
  void set(std::size_t row, std::size_t col, bool allow);

  std::size_t popcount() const noexcept;

  /// Half-open [first, last) column range holding every allowed cell of the
  /// row; empty when the row is fully forbidden.
  struct Span {
    std::size_t first = 0;
    std::size_t last = 0;
  };
  Span row_span(std::size_t row) const noexcept { return spans_[row]; }

  /// Copy of this mask re-dimensioned to cols, cropping or padding with 0.
  ConstraintMask with_cols(std::size_t cols) const;

  bool operator==(const ConstraintMask& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
  }

 private:
  void rescan_row(std::size_t row) noexcept;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
  std::vector<Span> spans_;
};

struct DtwResult {
  double distance = kInfinity;
  std::optional<WarpingPath> path;
  std::size_t cells_evaluated = 0;

  bool feasible() const noexcept { return path.has_value(); }
};

inline double pointwise_distance(double x, double y) noexcept {
  return x > y ? x - y : y - x;
}

/// Minimum cumulative |a_i - b_j| over monotone lattice paths. Forbidden
/// mask cells are unreachable; when the end cell cannot be reached the
/// result is infeasible (distance +inf, no path).
///
/// The returned path is recovered by backtracking from (m-1, n-1); among
/// equal-cost predecessors the diagonal one wins, then (i, j-1), then (i-1, j).
DtwResult dtw(std::span<const double> a, std::span<const double> b);
DtwResult dtw(std::span<const double> a, std::span<const double> b,
              const ConstraintMask& mask);
DtwResult dtw(const TimeSeries& a, const TimeSeries& b);
DtwResult dtw(const TimeSeries& a, const TimeSeries& b,
              const ConstraintMask& mask);

inline constexpr std::size_t kBruteForceMaxLength = 10;

/// Enumerates every allowed path. Ties resolve to the same path dtw()
/// returns. Lengths above kBruteForceMaxLength raise kInstanceTooLarge.
DtwResult brute_force_dtw(std::span<const double> a, std::span<const double> b);

/// Distance divided by the number of cells on the warping path.
double normalized_distance(const DtwResult& result);

}  // namespace warpwatch
