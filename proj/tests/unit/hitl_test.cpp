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

#include "warpwatch/errors.hpp"
#include "warpwatch/hitl.hpp"
#include "warpwatch/synthetic.hpp"
#include "warpwatch/training.hpp"

using namespace warpwatch;

namespace {

struct Setup {
  std::vector<NormalModel> models;
  std::vector<TimeSeries> stream;
};

Setup setup(std::uint64_t seed) {
  SyntheticConfig c;
  c.n_normal = 60;
  c.n_anomalous = 6;
  c.length = 50;
  c.seed = seed;
  auto data = generate_synthetic(c);
  std::vector<TimeSeries> training(data.begin(), data.begin() + 15);
  TrainingOptions o;
  o.window = 4;
  return {train({training, {}}, o), std::vector<TimeSeries>(data.begin() + 15, data.end())};
}

}  // namespace

TEST(Hitl, EmptyBandIsNoOp) {
  const auto s = setup(1);
  const auto report = simulate_hitl(s.models, s.stream, {0.0, 0.0});
  EXPECT_EQ(report.queried_count, 0u);
  EXPECT_EQ(report.before.confusion, report.after.confusion);
  EXPECT_EQ(report.final_models, s.models);
  EXPECT_EQ(report.stream_size, s.stream.size());
}

TEST(Hitl, QueriesAreAnsweredAndApplied) {
  const auto s = setup(2);
  const UncertaintyBand wide{0.0, 1.0};
  const auto report = simulate_hitl(s.models, s.stream, wide);
  // Everything lands in the band, so every decision is the expert's.
  EXPECT_EQ(report.queried_count, s.stream.size());
  EXPECT_EQ(report.after.f1, 1.0);
  EXPECT_EQ(report.after.accuracy, 1.0);
  EXPECT_NE(report.final_models, s.models);
}

TEST(Hitl, MatchesManualReplay) {
  const auto s = setup(3);
  const UncertaintyBand band{0.25, 0.45};
  const auto report = simulate_hitl(s.models, s.stream, band);
  auto models = s.models;
  std::size_t queried = 0;
  ConfusionMatrix after;
  for (const auto& q : s.stream) {
    const auto out = score_against(q, models, band);
    bool predicted = out.classification == Classification::kAnomalous;
    if (out.classification == Classification::kUncertain) {
      ++queried;
      predicted = q.label == Label::kAnomalous;
      if (q.label == Label::kNormal) {
        update_normal(models[out.pattern_id], out.path);
      } else {
        update_anomalous(models[out.pattern_id], out.path);
      }
    }
    after.record(q.label == Label::kAnomalous, predicted);
  }
  EXPECT_EQ(report.queried_count, queried);
  EXPECT_EQ(report.after.confusion, after);
  EXPECT_EQ(report.final_models, models);
}

TEST(Hitl, Errors) {
  const auto s = setup(4);
  try {
    simulate_hitl(s.models, s.stream, {0.5, 0.2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidBand);
  }
  auto models = s.models;
  try {
    apply_verdict(models, 7, {{0, 0}}, Label::kNormal);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
}

TEST(Hitl, ReportJson) {
  const auto s = setup(5);
  const auto j = to_json(simulate_hitl(s.models, s.stream, {0.0, 0.0}));
  for (const char* key : {"queried_count", "f1_before", "f1_after", "accuracy_before", "accuracy_after"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}
