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

#include "warpwatch/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "warpwatch/errors.hpp"

namespace warpwatch {
namespace {

void check_samples(std::span<const double> values, const char* which) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptySeries, std::string(which) + " series is empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kNonFiniteSample,
                  std::string(which) + " series sample " + std::to_string(i) +
                      " is not finite");
    }
  }
}

// Cumulative cost storage restricted to each row's allowed column extent.
class BandedCosts {
 public:
  BandedCosts(std::size_t rows, std::size_t cols, const ConstraintMask* mask)
      : spans_(rows), offsets_(rows + 1, 0) {
    for (std::size_t i = 0; i < rows; ++i) {
      spans_[i] = mask ? mask->row_span(i) : ConstraintMask::Span{0, cols};
      offsets_[i + 1] = offsets_[i] + (spans_[i].last - spans_[i].first);
    }
    costs_.assign(offsets_[rows], kInfinity);
  }

  ConstraintMask::Span span(std::size_t row) const { return spans_[row]; }

  double get(std::size_t row, std::size_t col) const {
    const auto& s = spans_[row];
    if (col < s.first || col >= s.last) return kInfinity;
    return costs_[offsets_[row] + (col - s.first)];
  }

  void put(std::size_t row, std::size_t col, double value) {
    costs_[offsets_[row] + (col - spans_[row].first)] = value;
  }

 private:
  std::vector<ConstraintMask::Span> spans_;
  std::vector<std::size_t> offsets_;
  std::vector<double> costs_;
};

DtwResult run_dtw(std::span<const double> a, std::span<const double> b,
                  const ConstraintMask* mask) {
  check_samples(a, "first");
  check_samples(b, "second");
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (mask && (mask->rows() != m || mask->cols() != n)) {
    throw Error(ErrorCode::kMaskDimensionMismatch,
                "mask is " + std::to_string(mask->rows()) + "x" +
                    std::to_string(mask->cols()) + ", lattice is " +
                    std::to_string(m) + "x" + std::to_string(n));
  }

  BandedCosts costs(m, n, mask);
  DtwResult result;
  for (std::size_t i = 0; i < m; ++i) {
    const auto span = costs.span(i);
    for (std::size_t j = span.first; j < span.last; ++j) {
      if (mask && !mask->allowed(i, j)) continue;
      ++result.cells_evaluated;
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = kInfinity;
        if (i > 0) best = std::min(best, costs.get(i - 1, j));
        if (i > 0 && j > 0) best = std::min(best, costs.get(i - 1, j - 1));
        if (j > 0) best = std::min(best, costs.get(i, j - 1));
        if (best == kInfinity) continue;
      }
      costs.put(i, j, best + pointwise_distance(a[i], b[j]));
    }
  }

  result.distance = costs.get(m - 1, n - 1);
  if (result.distance == kInfinity) return result;

  WarpingPath path;
  path.reserve(m + n - 1);
  std::size_t i = m - 1;
  std::size_t j = n - 1;
  path.push_back({i, j});
  while (i > 0 || j > 0) {
    // Preference order on ties: diagonal, then column predecessor, then row.
    Cell next{i, j};
    double best = kInfinity;
    if (i > 0 && j > 0 && costs.get(i - 1, j - 1) < best) {
      best = costs.get(i - 1, j - 1);
      next = {i - 1, j - 1};
    }
    if (j > 0 && costs.get(i, j - 1) < best) {
      best = costs.get(i, j - 1);
      next = {i, j - 1};
    }
    if (i > 0 && costs.get(i - 1, j) < best) {
      best = costs.get(i - 1, j);
      next = {i - 1, j};
    }
    i = next.row;
    j = next.col;
    path.push_back(next);
  }
  std::reverse(path.begin(), path.end());
  result.path = std::move(path);
  return result;
}

struct Enumerator {
  std::span<const double> a;
  std::span<const double> b;
  WarpingPath reversed;  // current partial path, end cell first
  double best = kInfinity;
  WarpingPath best_path;

  void visit(std::size_t i, std::size_t j) {
    reversed.push_back({i, j});
    if (i == 0 && j == 0) {
      // Sum from the start cell, the order DP accumulates in.
      double weight = 0.0;
      for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) {
        weight = weight + pointwise_distance(a[it->row], b[it->col]);
      }
      if (weight < best) {
        best = weight;
        best_path.assign(reversed.rbegin(), reversed.rend());
      }
    } else {
      if (i > 0 && j > 0) visit(i - 1, j - 1);
      if (j > 0) visit(i, j - 1);
      if (i > 0) visit(i - 1, j);
    }
    reversed.pop_back();
  }
};

}  // namespace

ConstraintMask::ConstraintMask(std::size_t rows, std::size_t cols, bool fill)
    : rows_(rows),
      cols_(cols),
      bits_(rows * cols, fill ? 1 : 0),
      spans_(rows, fill ? Span{0, cols} : Span{}) {}

ConstraintMask ConstraintMask::band(std::size_t rows, std::size_t cols,
                                    std::size_t half_width) {
  ConstraintMask mask(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t lo = i > half_width ? i - half_width : 0;
    const std::size_t hi = std::min(cols, i + half_width + 1);
    for (std::size_t j = lo; j < hi; ++j) mask.bits_[i * cols + j] = 1;
    mask.spans_[i] = lo < hi ? Span{lo, hi} : Span{};
  }
  return mask;
}

void ConstraintMask::set(std::size_t row, std::size_t col, bool allow) {
  if (row >= rows_ || col >= cols_) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "mask cell (" + std::to_string(row) + "," +
                    std::to_string(col) + ") outside " + std::to_string(rows_) +
                    "x" + std::to_string(cols_));
  }
  auto& bit = bits_[row * cols_ + col];
  if ((bit != 0) == allow) return;
  bit = allow ? 1 : 0;
  auto& span = spans_[row];
  if (allow) {
    if (span.first == span.last) {
      span = {col, col + 1};
    } else {
      span.first = std::min(span.first, col);
      span.last = std::max(span.last, col + 1);
    }
  } else if (col == span.first || col + 1 == span.last) {
    rescan_row(row);
  }
}

void ConstraintMask::rescan_row(std::size_t row) noexcept {
  const auto* begin = bits_.data() + row * cols_;
  const auto* end = begin + cols_;
  const auto* first = std::find(begin, end, std::uint8_t{1});
  if (first == end) {
    spans_[row] = {};
    return;
  }
  const auto* last = end;
  while (*(last - 1) == 0) --last;
  spans_[row] = {static_cast<std::size_t>(first - begin),
                 static_cast<std::size_t>(last - begin)};
}

std::size_t ConstraintMask::popcount() const noexcept {
  return static_cast<std::size_t>(
      std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

ConstraintMask ConstraintMask::with_cols(std::size_t cols) const {
  if (cols == cols_) return *this;
  ConstraintMask out(rows_, cols);
  const std::size_t keep = std::min(cols, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::copy_n(bits_.begin() + static_cast<std::ptrdiff_t>(i * cols_), keep,
                out.bits_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    out.rescan_row(i);
  }
  return out;
}

DtwResult dtw(std::span<const double> a, std::span<const double> b) {
  return run_dtw(a, b, nullptr);
}

DtwResult dtw(std::span<const double> a, std::span<const double> b,
              const ConstraintMask& mask) {
  return run_dtw(a, b, &mask);
}

DtwResult dtw(const TimeSeries& a, const TimeSeries& b) {
  return run_dtw(a.values, b.values, nullptr);
}

DtwResult dtw(const TimeSeries& a, const TimeSeries& b,
              const ConstraintMask& mask) {
  return run_dtw(a.values, b.values, &mask);
}

DtwResult brute_force_dtw(std::span<const double> a, std::span<const double> b) {
  check_samples(a, "first");
  check_samples(b, "second");
  if (a.size() > kBruteForceMaxLength || b.size() > kBruteForceMaxLength) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "brute force enumeration is limited to length " +
                    std::to_string(kBruteForceMaxLength));
  }
  Enumerator walk{a, b, {}, kInfinity, {}};
  walk.reversed.reserve(a.size() + b.size());
  walk.visit(a.size() - 1, b.size() - 1);

  DtwResult result;
  result.distance = walk.best;
  result.path = std::move(walk.best_path);
  result.cells_evaluated = a.size() * b.size();
  return result;
}

double normalized_distance(const DtwResult& result) {
  if (!result.feasible() || result.path->empty()) {
    throw Error(ErrorCode::kInfeasibleResult,
                "cannot normalise an infeasible alignment");
  }
  return result.distance / static_cast<double>(result.path->size());
}

}  // namespace warpwatch
