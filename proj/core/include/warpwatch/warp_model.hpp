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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "warpwatch/dtw.hpp"
#include "warpwatch/support.hpp"
#include "warpwatch/time_series.hpp"
#include "warpwatch/warp_matrix.hpp"

namespace warpwatch {

/// Which per-part quantity is minimised when deriving a cell's threshold.
///   kMinSuppOverCount:  min(supp) / count_paths(cell)
///   kMinRsuppOverCount: min(supp / count_paths) / count_paths(cell)
enum class ThresholdMode { kMinSuppOverCount, kMinRsuppOverCount };

std::string_view to_string(ThresholdMode mode) noexcept;
std::optional<ThresholdMode> parse_threshold_mode(std::string_view text) noexcept;

/// Per (cell, arriving direction) minimum relative support observed on the
/// training path parts; cells/directions without training parts hold no data.
class ThresholdTensor {
 public:
  ThresholdTensor() = default;
  ThresholdTensor(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols * kDirections, kNoData) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::optional<double> get(Cell c, Direction d) const noexcept {
    if (c.row >= rows_ || c.col >= cols_) return std::nullopt;
    const double v = values_[index(c, d)];
    if (v < 0.0) return std::nullopt;
    return v;
  }
  void set(Cell c, Direction d, std::optional<double> value) {
    values_[index(c, d)] = value ? *value : kNoData;
  }
  /// Keeps the smaller of the stored value and candidate.
  void lower_to(Cell c, Direction d, double candidate) {
    double& v = values_[index(c, d)];
    if (v < 0.0 || candidate < v) v = candidate;
  }
  void clear_cell(Cell c) {
    for (std::size_t d = 0; d < kDirections; ++d) {
      values_[index(c, static_cast<Direction>(d))] = kNoData;
    }
  }

  bool operator==(const ThresholdTensor&) const = default;

 private:
  static constexpr double kNoData = -1.0;

  std::size_t index(Cell c, Direction d) const noexcept {
    return (c.row * cols_ + c.col) * kDirections + static_cast<std::size_t>(d);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Builds the threshold tensor for every training path part of the given
/// window length, evaluated against matrix (which must be built from paths).
/// Throws kInvalidWindow for window < 2 and kWindowTooLarge when window is
/// not shorter than the shortest training path.
ThresholdTensor build_thresholds(std::span<const WarpingPath> paths,
                                 const WarpingMatrix& matrix, std::size_t window,
                                 Aggregator aggregator, ThresholdMode mode);

/// Learned normality of one behaviour pattern.
struct NormalModel {
  TimeSeries representative;
  WarpingMatrix matrix;
  ConstraintMask mask;
  ThresholdTensor thresholds;
  std::size_t window = 5;
  double score_threshold = 1.0;
  Aggregator aggregator = Aggregator::kMin;
  ThresholdMode threshold_mode = ThresholdMode::kMinSuppOverCount;
  /// Paths the matrix was accumulated from; needed to refresh thresholds
  /// after feedback updates.
  std::vector<WarpingPath> training_paths;
  std::vector<double> training_scores;
  /// Maximum normalised DTW distance of the training set, when known.
  std::optional<double> baseline_threshold;

  std::size_t training_count() const noexcept { return training_paths.size(); }

  bool operator==(const NormalModel&) const = default;
};

/// Assembles a model from already-computed training paths: matrix, mask and
/// thresholds. score_threshold is left at 1.0 for the caller to set.
NormalModel assemble_model(TimeSeries representative,
                           std::vector<WarpingPath> paths, std::size_t cols,
                           std::size_t window, Aggregator aggregator,
                           ThresholdMode mode);

/// Adds the path's steps to the matrix, registers the path as a training
/// path and refreshes the mask and the thresholds it influences. In place.
void update_normal(NormalModel& model, const WarpingPath& path);

/// Subtracts the path's steps (clamped at zero), drops one stored copy of the
/// path if present and refreshes the mask and influenced thresholds.
void update_anomalous(NormalModel& model, const WarpingPath& path);

}  // namespace warpwatch
