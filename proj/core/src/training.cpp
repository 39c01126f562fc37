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

#include "warpwatch/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "warpwatch/detector.hpp"
#include "warpwatch/dtw.hpp"
#include "warpwatch/errors.hpp"

namespace warpwatch {

std::string_view to_string(ThresholdSource source) noexcept {
  return source == ThresholdSource::kLeaveOneOut ? "leave_one_out" : "in_sample";
}

std::optional<ThresholdSource> parse_threshold_source(std::string_view text) noexcept {
  if (text == "leave_one_out") return ThresholdSource::kLeaveOneOut;
  if (text == "in_sample") return ThresholdSource::kInSample;
  return std::nullopt;
}

TimeSeries select_representative(std::span<const TimeSeries> group) {
  if (group.empty()) throw Error(ErrorCode::kEmptyGroup, "cannot pick a medoid of nothing");
  const std::size_t n = group.size();
  std::vector<double> sums(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = dtw(group[i], group[j]).distance;
      sums[i] += d;
      sums[j] += d;
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (sums[i] < sums[best] || (sums[i] == sums[best] && group[i].id < group[best].id)) {
      best = i;
    }
  }
  return group[best];
}

double data_driven_threshold(NormalModel& model, std::span<const TimeSeries> training,
                             ThresholdSource source) {
  if (training.empty()) {
    throw Error(ErrorCode::kEmptyTrainingSet, "no training series to derive a threshold");
  }
  // Leaving out the only series would leave nothing to score against.
  const bool leave_out = source == ThresholdSource::kLeaveOneOut &&
                         model.training_paths.size() == training.size() &&
                         training.size() > 1;
  std::vector<double> scores;
  scores.reserve(training.size());
  for (std::size_t t = 0; t < training.size(); ++t) {
    if (leave_out) {
      NormalModel reduced = model;
      update_anomalous(reduced, model.training_paths[t]);
      scores.push_back(edtwa_score(training[t], reduced).score);
    } else {
      scores.push_back(edtwa_score(training[t], model).score);
    }
  }
  model.score_threshold = *std::min_element(scores.begin(), scores.end());
  model.training_scores = std::move(scores);
  return model.score_threshold;
}

NormalModel train_group(const TimeSeries& representative,
                        std::span<const TimeSeries> group,
                        const TrainingOptions& options) {
  if (group.empty()) throw Error(ErrorCode::kEmptyTrainingSet, "training group is empty");
  validate_series(representative);
  std::size_t cols = 0;
  std::vector<WarpingPath> paths;
  paths.reserve(group.size());
  double baseline = 0.0;
  for (const auto& series : group) {
    validate_series(series);
    DtwResult alignment = dtw(representative, series);
    baseline = std::max(baseline, normalized_distance(alignment));
    cols = std::max(cols, series.size());
    paths.push_back(std::move(*alignment.path));
  }

  TimeSeries rep = representative;
  rep.label = Label::kNormal;
  NormalModel model = assemble_model(std::move(rep), std::move(paths), cols,
                                     options.window, options.aggregator,
                                     options.threshold_mode);
  model.baseline_threshold = baseline;
  if (options.score_threshold) {
    std::vector<double> scores;
    for (const auto& series : group) scores.push_back(edtwa_score(series, model).score);
    model.training_scores = std::move(scores);
    model.score_threshold = *options.score_threshold;
  } else {
    data_driven_threshold(model, group, options.threshold_source);
  }
  return model;
}

std::vector<NormalModel> train(const TrainingSet& training,
                               const TrainingOptions& options) {
  if (training.series.empty()) {
    throw Error(ErrorCode::kEmptyTrainingSet, "training set is empty");
  }
  for (const auto& s : training.series) {
    if (s.label != Label::kNormal) {
      throw Error(ErrorCode::kInvalidConfig,
                  "training series '" + s.id + "' is not labeled normal");
    }
  }

  std::map<std::string, std::vector<TimeSeries>> groups;
  if (training.partition.empty()) {
    groups[""] = training.series;
  } else {
    for (const auto& s : training.series) {
      auto it = training.partition.find(s.id);
      if (it == training.partition.end()) {
        throw Error(ErrorCode::kInvalidConfig,
                    "series '" + s.id + "' has no partition entry");
      }
      groups[it->second].push_back(s);
    }
  }

  std::vector<NormalModel> models;
  for (const auto& [name, members] : groups) {
    const TimeSeries* expert = nullptr;
    if (auto it = options.representatives.find(name); it != options.representatives.end()) {
      expert = &it->second;
    } else if (training.partition.empty() && options.representatives.size() == 1) {
      expert = &options.representatives.begin()->second;
    }
    const TimeSeries representative = expert ? *expert : select_representative(members);
    models.push_back(train_group(representative, members, options));
  }
  return models;
}

Heatmap validate_model_visual(const NormalModel& model) {
  Heatmap map;
  map.rows = model.matrix.rows();
  map.cols = model.matrix.cols();
  map.values.assign(map.rows * map.cols, 0.0);
  std::uint64_t peak = 0;
  std::uint64_t total = 0;
  std::uint64_t near_diagonal = 0;
  const double slope = map.cols > 1 && map.rows > 1
                           ? static_cast<double>(map.rows - 1) / static_cast<double>(map.cols - 1)
                           : 1.0;
  for (std::size_t i = 0; i < map.rows; ++i) {
    for (std::size_t j = 0; j < map.cols; ++j) {
      const std::uint64_t count = model.matrix.at({i, j}).total();
      peak = std::max(peak, count);
      total += count;
      const double diagonal_row = slope * static_cast<double>(j);
      if (std::abs(static_cast<double>(i) - diagonal_row) <=
          static_cast<double>(model.window)) {
        near_diagonal += count;
      }
    }
  }
  if (peak > 0) {
    for (std::size_t k = 0; k < map.values.size(); ++k) {
      map.values[k] = static_cast<double>(model.matrix.at({k / map.cols, k % map.cols}).total()) /
                      static_cast<double>(peak);
    }
  }
  map.diagonal_mass =
      total == 0 ? 0.0 : static_cast<double>(near_diagonal) / static_cast<double>(total);
  return map;
}

}  // namespace warpwatch
