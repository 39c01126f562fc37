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

#include "warpwatch/hitl.hpp"

#include "warpwatch/errors.hpp"

namespace warpwatch {

void apply_verdict(std::vector<NormalModel>& models, std::size_t pattern_id,
                   const WarpingPath& path, Label verdict) {
  if (pattern_id >= models.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "pattern " + std::to_string(pattern_id) + " does not exist");
  }
  switch (verdict) {
    case Label::kNormal: update_normal(models[pattern_id], path); break;
    case Label::kAnomalous: update_anomalous(models[pattern_id], path); break;
    case Label::kUnlabeled:
      throw Error(ErrorCode::kUnlabeledSeries, "an expert verdict needs a label");
  }
}

HitlReport simulate_hitl(std::vector<NormalModel> models,
                         std::span<const TimeSeries> stream,
                         const UncertaintyBand& band) {
  validate_band(band);
  HitlReport report;
  report.stream_size = stream.size();
  report.before = evaluate(
      [&](const TimeSeries& s) {
        return score_against(s, models).classification == Classification::kAnomalous;
      },
      stream);

  ConfusionMatrix after;
  for (const auto& series : stream) {
    const DetectionOutcome outcome = score_against(series, models, band);
    bool predicted_anomalous = outcome.classification == Classification::kAnomalous;
    if (outcome.classification == Classification::kUncertain) {
      ++report.queried_count;
      predicted_anomalous = series.label == Label::kAnomalous;
      apply_verdict(models, outcome.pattern_id, outcome.path, series.label);
    }
    after.record(series.label == Label::kAnomalous, predicted_anomalous);
  }
  report.after = make_report(after);
  report.final_models = std::move(models);
  return report;
}

nlohmann::json to_json(const HitlReport& report) {
  return {
      {"queried_count", report.queried_count},
      {"stream_size", report.stream_size},
      {"f1_before", report.before.f1},
      {"f1_after", report.after.f1},
      {"accuracy_before", report.before.accuracy},
      {"accuracy_after", report.after.accuracy},
      {"before", to_json(report.before)},
      {"after", to_json(report.after)},
  };
}

}  // namespace warpwatch
