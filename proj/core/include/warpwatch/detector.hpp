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
#include <span>
#include <string_view>
#include <vector>

#include "warpwatch/support.hpp"
#include "warpwatch/time_series.hpp"
#include "warpwatch/warp_model.hpp"

namespace warpwatch {

enum class Classification { kNormal, kAnomalous, kUncertain };

std::string_view to_string(Classification c) noexcept;

/// Closed score interval [low, high] inside which decisions are deferred to
/// an expert. A degenerate band (low == high) defers nothing.
struct UncertaintyBand {
  double low = 0.0;
  double high = 0.0;

  bool empty() const noexcept { return !(low < high); }
  bool contains(double score) const noexcept {
    return !empty() && score >= low && score <= high;
  }
};

/// Throws kInvalidBand unless 0 <= low <= high <= 1.
void validate_band(const UncertaintyBand& band);

struct DetectionOutcome {
  double score = 0.0;
  Classification classification = Classification::kAnomalous;
  /// detect() for path steps 1 .. |path|-1.
  std::vector<std::uint8_t> per_step_flags;
  WarpingPath path;
  bool infeasible = false;
  std::size_t pattern_id = 0;
};

/// 1 iff some training path passes through path[i] and the part ending there
/// reaches the stored threshold for that cell and arriving direction.
bool detect(const WarpingPath& path, std::size_t i, const NormalModel& model);

/// Mask-constrained alignment of the query against the representative,
/// followed by the fraction of detected path parts. Classified against the
/// model's score threshold with no uncertainty band.
DetectionOutcome edtwa_score(const TimeSeries& query, const NormalModel& model);

/// Band first, then score >= threshold.
Classification classify(double score, double score_threshold,
                        const UncertaintyBand& band);

/// Scores the query against every pattern. The reported score is the best
/// one; the series is normal when some pattern accepts it.
DetectionOutcome score_against(const TimeSeries& query,
                               std::span<const NormalModel> models,
                               const UncertaintyBand& band = {});

}  // namespace warpwatch
