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

#include <span>

#include "warpwatch/detector.hpp"
#include "warpwatch/time_series.hpp"

namespace warpwatch {

/// Distance-only detector: a series is anomalous when its normalised DTW
/// distance to the representative exceeds the largest one seen in training.
struct BaselineModel {
  TimeSeries representative;
  double threshold = 0.0;
};

BaselineModel train_baseline(std::span<const TimeSeries> training,
                             const TimeSeries& representative);

/// Strict: a distance equal to the threshold is normal.
Classification detect_baseline(const TimeSeries& query, const BaselineModel& model);

}  // namespace warpwatch
