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
#include <functional>
#include <span>

#include <nlohmann/json.hpp>

#include "warpwatch/time_series.hpp"

namespace warpwatch {

/// Anomalous is the positive class.
struct ConfusionMatrix {
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tp = 0;

  std::size_t total() const noexcept { return tn + fp + fn + tp; }
  void record(bool truly_anomalous, bool predicted_anomalous) noexcept;

  bool operator==(const ConfusionMatrix&) const = default;
};

/// 2tp / (2tp + fp + fn); 0 when nothing is positive on either side.
double f1_score(const ConfusionMatrix& cm) noexcept;
/// (tp + tn) / total; 0 for an empty matrix.
double accuracy(const ConfusionMatrix& cm) noexcept;

struct EvaluationReport {
  ConfusionMatrix confusion;
  double f1 = 0.0;
  double accuracy = 0.0;
};

EvaluationReport make_report(const ConfusionMatrix& cm) noexcept;

/// Predicate returning true when it considers the series anomalous.
using AnomalyPredicate = std::function<bool(const TimeSeries&)>;

/// Runs the predicate over a labeled set. Throws kUnlabeledSeries if any
/// series lacks a label.
EvaluationReport evaluate(const AnomalyPredicate& is_anomalous,
                          std::span<const TimeSeries> test_set);

nlohmann::json to_json(const EvaluationReport& report);

}  // namespace warpwatch
