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

#include "warpwatch/metrics.hpp"

#include "warpwatch/errors.hpp"

namespace warpwatch {

void ConfusionMatrix::record(bool truly_anomalous, bool predicted_anomalous) noexcept {
  if (truly_anomalous) {
    ++(predicted_anomalous ? tp : fn);
  } else {
    ++(predicted_anomalous ? fp : tn);
  }
}

double f1_score(const ConfusionMatrix& cm) noexcept {
  const auto denominator = 2 * cm.tp + cm.fp + cm.fn;
  if (denominator == 0) return 0.0;
  return static_cast<double>(2 * cm.tp) / static_cast<double>(denominator);
}

double accuracy(const ConfusionMatrix& cm) noexcept {
  if (cm.total() == 0) return 0.0;
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

EvaluationReport make_report(const ConfusionMatrix& cm) noexcept {
  return {cm, f1_score(cm), accuracy(cm)};
}

EvaluationReport evaluate(const AnomalyPredicate& is_anomalous,
                          std::span<const TimeSeries> test_set) {
  for (const auto& s : test_set) {
    if (s.label == Label::kUnlabeled) {
      throw Error(ErrorCode::kUnlabeledSeries, "series '" + s.id + "' has no label");
    }
  }
  ConfusionMatrix cm;
  for (const auto& s : test_set) {
    cm.record(s.label == Label::kAnomalous, is_anomalous(s));
  }
  return make_report(cm);
}

nlohmann::json to_json(const EvaluationReport& report) {
  return {
      {"confusion",
       {{"tn", report.confusion.tn},
        {"fp", report.confusion.fp},
        {"fn", report.confusion.fn},
        {"tp", report.confusion.tp}}},
      {"f1", report.f1},
      {"accuracy", report.accuracy},
  };
}

}  // namespace warpwatch
