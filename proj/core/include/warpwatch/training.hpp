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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warpwatch/support.hpp"
#include "warpwatch/time_series.hpp"
#include "warpwatch/warp_model.hpp"

namespace warpwatch {

struct TrainingSet {
  std::vector<TimeSeries> series;
  /// series id -> pattern group. Empty means one group holding everything.
  std::map<std::string, std::string> partition;
};

/// Where the scores behind the data-driven score threshold come from.
///   kLeaveOneOut: each training series scored by the model built without it.
///   kInSample:    each training series scored by the full model.
enum class ThresholdSource { kLeaveOneOut, kInSample };

std::string_view to_string(ThresholdSource source) noexcept;
std::optional<ThresholdSource> parse_threshold_source(std::string_view text) noexcept;

struct TrainingOptions {
  std::size_t window = 5;
  Aggregator aggregator = Aggregator::kMin;
  ThresholdMode threshold_mode = ThresholdMode::kMinSuppOverCount;
  ThresholdSource threshold_source = ThresholdSource::kLeaveOneOut;
  /// Expert score threshold; replaces the data-driven one when set.
  std::optional<double> score_threshold;
  /// Expert representatives keyed by group name (any key when unpartitioned).
  std::map<std::string, TimeSeries> representatives;
};

/// Medoid under DTW distance; ties go to the lexicographically lowest id.
TimeSeries select_representative(std::span<const TimeSeries> group);

/// Builds the model for one group around a fixed representative.
NormalModel train_group(const TimeSeries& representative,
                        std::span<const TimeSeries> group,
                        const TrainingOptions& options);

/// One model per pattern group, ordered by group name.
std::vector<NormalModel> train(const TrainingSet& training,
                               const TrainingOptions& options);

/// Minimum training score; stores it and the score list into the model.
double data_driven_threshold(NormalModel& model, std::span<const TimeSeries> training,
                             ThresholdSource source = ThresholdSource::kLeaveOneOut);

/// count_paths per cell scaled to [0,1] by the grid maximum, plus the
/// fraction of all counter mass lying within `window` rows of the diagonal.
struct Heatmap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major
  double diagonal_mass = 0.0;

  double at(std::size_t row, std::size_t col) const { return values[row * cols + col]; }
};

Heatmap validate_model_visual(const NormalModel& model);

}  // namespace warpwatch
