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
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "warpwatch/detector.hpp"
#include "warpwatch/metrics.hpp"
#include "warpwatch/warp_model.hpp"

namespace warpwatch {

struct HitlReport {
  std::size_t queried_count = 0;
  std::size_t stream_size = 0;
  EvaluationReport before;
  EvaluationReport after;
  /// Models after every simulated expert update.
  std::vector<NormalModel> final_models;
};

/// Applies an expert verdict for a query aligned against models[pattern_id].
void apply_verdict(std::vector<NormalModel>& models, std::size_t pattern_id,
                   const WarpingPath& path, Label verdict);

/// Replays a labeled stream through the detector. Outcomes inside the band
/// are answered by the ground-truth label (the simulated expert), which
/// then updates the matched pattern. `before` is the frozen initial models
/// with no band; `after` uses the expert answers and the evolving models.
HitlReport simulate_hitl(std::vector<NormalModel> models,
                         std::span<const TimeSeries> stream,
                         const UncertaintyBand& band);

nlohmann::json to_json(const HitlReport& report);

}  // namespace warpwatch
