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

#include "warpwatch/detector.hpp"

#include <cmath>
#include <string>

#include "warpwatch/dtw.hpp"
#include "warpwatch/errors.hpp"

namespace warpwatch {

std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::kNormal: return "normal";
    case Classification::kAnomalous: return "anomalous";
    case Classification::kUncertain: return "uncertain";
  }
  return "anomalous";
}

void validate_band(const UncertaintyBand& band) {
  if (!std::isfinite(band.low) || !std::isfinite(band.high) || band.low < 0.0 ||
      band.high > 1.0 || band.low > band.high) {
    throw Error(ErrorCode::kInvalidBand,
                "band [" + std::to_string(band.low) + ", " +
                    std::to_string(band.high) + "] must satisfy 0 <= low <= high <= 1");
  }
}

bool detect(const WarpingPath& path, std::size_t i, const NormalModel& model) {
  if (i == 0 || i >= path.size()) return false;
  const std::uint64_t through = model.matrix.at_or_empty(path[i]).total();
  if (through == 0) return false;
  const auto dir = step_direction(path, i);
  if (!dir) return false;
  const auto threshold = model.thresholds.get(path[i], *dir);
  if (!threshold) return false;
  const double relative =
      static_cast<double>(supp(path, i, model.window, model.matrix, model.aggregator)) /
      static_cast<double>(through);
  return relative >= *threshold;
}

Classification classify(double score, double score_threshold,
                        const UncertaintyBand& band) {
  validate_band(band);
  if (band.contains(score)) return Classification::kUncertain;
  return score >= score_threshold ? Classification::kNormal
                                  : Classification::kAnomalous;
}

DetectionOutcome edtwa_score(const TimeSeries& query, const NormalModel& model) {
  validate_series(query);
  DetectionOutcome outcome;
  const ConstraintMask mask = model.mask.with_cols(query.size());
  DtwResult alignment = dtw(model.representative.values, query.values, mask);
  if (!alignment.feasible()) {
    outcome.infeasible = true;
    outcome.score = 0.0;
    outcome.classification = Classification::kAnomalous;
    return outcome;
  }
  outcome.path = std::move(*alignment.path);
  const std::size_t steps = outcome.path.size() - 1;
  outcome.per_step_flags.resize(steps);
  std::size_t detected = 0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const bool hit = detect(outcome.path, i, model);
    outcome.per_step_flags[i - 1] = hit ? 1 : 0;
    detected += hit ? 1 : 0;
  }
  // A single-cell alignment has no parts to contradict the model.
  outcome.score = steps == 0 ? 1.0
                             : static_cast<double>(detected) / static_cast<double>(steps);
  outcome.classification = classify(outcome.score, model.score_threshold, {});
  return outcome;
}

DetectionOutcome score_against(const TimeSeries& query,
                               std::span<const NormalModel> models,
                               const UncertaintyBand& band) {
  validate_band(band);
  if (models.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no normal model to score against");
  }
  DetectionOutcome best;
  bool accepted = false;
  for (std::size_t k = 0; k < models.size(); ++k) {
    DetectionOutcome current = edtwa_score(query, models[k]);
    current.pattern_id = k;
    accepted = accepted ||
               (!current.infeasible && current.score >= models[k].score_threshold);
    // Highest score wins; a feasible alignment beats an infeasible one.
    const bool better = k == 0 || current.score > best.score ||
                        (best.infeasible && !current.infeasible);
    if (better) best = std::move(current);
  }
  if (best.infeasible) {
    best.classification = Classification::kAnomalous;
  } else if (band.contains(best.score)) {
    best.classification = Classification::kUncertain;
  } else {
    best.classification = accepted ? Classification::kNormal : Classification::kAnomalous;
  }
  return best;
}

}  // namespace warpwatch
