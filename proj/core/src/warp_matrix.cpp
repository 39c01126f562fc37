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

#include "warpwatch/warp_matrix.hpp"

#include <string>

#include "warpwatch/errors.hpp"

namespace warpwatch {
namespace {

std::string cell_text(Cell c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

}  // namespace

std::optional<Direction> step_direction(const WarpingPath& path, std::size_t i) {
  if (i == 0 || i >= path.size()) return std::nullopt;
  const Cell prev = path[i - 1];
  const Cell cur = path[i];
  const bool col_step = cur.col == prev.col + 1;
  const bool row_step = cur.row == prev.row + 1;
  if (col_step && cur.row == prev.row) return Direction::kRight;
  if (col_step && row_step) return Direction::kDiag;
  if (row_step && cur.col == prev.col) return Direction::kUp;
  return std::nullopt;
}

DirectionCounts encode_step(const WarpingPath& path, std::size_t i) {
  if (i == 0 || i >= path.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "step " + std::to_string(i) + " of a path with " +
                    std::to_string(path.size()) + " positions");
  }
  DirectionCounts enc;
  if (auto dir = step_direction(path, i)) enc.counts[static_cast<std::size_t>(*dir)] = 1;
  return enc;
}

const DirectionCounts& WarpingMatrix::at(Cell c) const {
  if (!contains(c)) {
    throw Error(ErrorCode::kIndexOutOfRange, "cell " + cell_text(c));
  }
  return cells_[c.row * cols_ + c.col];
}

void WarpingMatrix::set(Cell c, const DirectionCounts& value) {
  if (!contains(c)) {
    throw Error(ErrorCode::kIndexOutOfRange, "cell " + cell_text(c));
  }
  cells_[c.row * cols_ + c.col] = value;
}

std::uint64_t WarpingMatrix::count_paths(Cell c) const { return at(c).total(); }

void WarpingMatrix::check_fits(const WarpingPath& path) const {
  for (const Cell& c : path) {
    if (!contains(c)) {
      throw Error(ErrorCode::kPathOutOfBounds,
                  "path position " + cell_text(c) + " outside " +
                      std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }
}

void WarpingMatrix::add_path(const WarpingPath& path) {
  check_fits(path);
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (auto dir = step_direction(path, i)) {
      ++cells_[path[i].row * cols_ + path[i].col].counts[static_cast<std::size_t>(*dir)];
    }
  }
}

void WarpingMatrix::subtract_path(const WarpingPath& path) {
  check_fits(path);
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (auto dir = step_direction(path, i)) {
      auto& counter =
          cells_[path[i].row * cols_ + path[i].col].counts[static_cast<std::size_t>(*dir)];
      if (counter > 0) --counter;
    }
  }
}

WarpingMatrix build_matrix(std::span<const WarpingPath> paths, std::size_t rows,
                           std::size_t cols) {
  WarpingMatrix matrix(rows, cols);
  for (const auto& path : paths) matrix.add_path(path);
  return matrix;
}

ConstraintMask derive_mask(const WarpingMatrix& matrix) {
  ConstraintMask mask(matrix.rows(), matrix.cols());
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      if (matrix.at_or_empty({i, j}).total() > 0) mask.set(i, j, true);
    }
  }
  if (matrix.rows() > 0 && matrix.cols() > 0) mask.set(0, 0, true);
  return mask;
}

}  // namespace warpwatch
