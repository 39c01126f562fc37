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

#include "warpwatch/baseline.hpp"

#include <algorithm>

#include "warpwatch/dtw.hpp"
#include "warpwatch/errors.hpp"

namespace warpwatch {

BaselineModel train_baseline(std::span<const TimeSeries> training,
                             const TimeSeries& representative) {
  if (training.empty()) {
    throw Error(ErrorCode::kEmptyTrainingSet, "baseline needs training series");
  }
  BaselineModel model{representative, 0.0};
  for (const auto& series : training) {
    model.threshold =
        std::max(model.threshold, normalized_distance(dtw(representative, series)));
  }
  return model;
}

Classification detect_baseline(const TimeSeries& query, const BaselineModel& model) {
  const double distance = normalized_distance(dtw(model.representative, query));
  return distance > model.threshold ? Classification::kAnomalous
                                    : Classification::kNormal;
}

}  // namespace warpwatch
