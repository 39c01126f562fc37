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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "warpwatch/baseline.hpp"
#include "warpwatch/dtw.hpp"
#include "warpwatch/errors.hpp"

using namespace warpwatch;

namespace {

TimeSeries series(std::string id, std::vector<double> v, Label l = Label::kNormal) {
  return {std::move(id), std::move(v), l};
}

double oracle_normalized(const std::vector<double>& a, const std::vector<double>& b) {
  // Path length of the returned optimum is needed; use the library path but
  // recompute its weight independently.
  const auto r = dtw(a, b);
  return oracle::path_weight(a, b, *r.path) / static_cast<double>(r.path->size());
}

}  // namespace

TEST(Baseline, SelfTrainingGivesZero) {
  const auto r = series("R", {1, 2, 3});
  const std::vector<TimeSeries> training{r};
  EXPECT_EQ(train_baseline(training, r).threshold, 0.0);
}

TEST(Baseline, ThresholdIsMaxNormalizedDistance) {
  const auto r = series("R", {0, 1, 2, 1, 0});
  const std::vector<TimeSeries> training{series("a", {0, 1, 2, 2, 1, 0}), series("b", {0, 2, 1, 0}),
                                         series("c", {0, 1, 1, 1, 0})};
  double expected = 0.0;
  for (const auto& t : training) expected = std::max(expected, oracle_normalized(r.values, t.values));
  const auto model = train_baseline(training, r);
  EXPECT_DOUBLE_EQ(model.threshold, expected);

  const auto outlier = series("o", {5, 6, 7, 6, 5});
  EXPECT_LT(model.threshold, oracle_normalized(r.values, outlier.values));
  EXPECT_EQ(detect_baseline(outlier, model), Classification::kAnomalous);
}

TEST(Baseline, BoundaryIsStrict) {
  const auto r = series("R", {0, 0, 0});
  const std::vector<TimeSeries> training{series("a", {1, 1, 1})};
  const auto model = train_baseline(training, r);
  EXPECT_EQ(model.threshold, 1.0);
  EXPECT_EQ(detect_baseline(series("q", {1, 1, 1}), model), Classification::kNormal);
  EXPECT_EQ(detect_baseline(r, model), Classification::kNormal);
  EXPECT_EQ(detect_baseline(series("q", {1, 1, 1.01}), model), Classification::kAnomalous);
}

TEST(Baseline, SpikeIsAnomalous) {
  std::vector<TimeSeries> training;
  for (int k = 0; k < 4; ++k) training.push_back(series("t" + std::to_string(k), oracle::warped_sine(40, 0.05 * k)));
  const auto model = train_baseline(training, training[0]);
  auto spiked = training[1].values;
  spiked[20] += 10.0;
  spiked[21] += 6.0;
  EXPECT_EQ(detect_baseline(series("s", spiked), model), Classification::kAnomalous);
}

TEST(Baseline, EmptyTraining) {
  try {
    train_baseline({}, series("R", {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyTrainingSet);
  }
}
