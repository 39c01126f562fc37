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
#include "warpwatch/errors.hpp"
#include "warpwatch/metrics.hpp"

using namespace warpwatch;

namespace {

ConfusionMatrix cm(std::size_t tn, std::size_t fp, std::size_t fn, std::size_t tp) {
  return {tn, fp, fn, tp};
}

}  // namespace

TEST(Metrics, FormulasAgainstOracle) {
  for (std::size_t tn : {0u, 3u, 50u}) {
    for (std::size_t fp : {0u, 1u, 7u}) {
      for (std::size_t fn : {0u, 2u}) {
        for (std::size_t tp : {0u, 1u, 9u}) {
          const auto m = cm(tn, fp, fn, tp);
          EXPECT_DOUBLE_EQ(f1_score(m), oracle::f1(tn, fp, fn, tp));
          EXPECT_DOUBLE_EQ(accuracy(m), oracle::accuracy(tn, fp, fn, tp));
        }
      }
    }
  }
}

TEST(Metrics, ReferenceRows) {
  EXPECT_NEAR(f1_score(cm(860, 40, 38, 62)), 0.6139, 5e-5);
  EXPECT_NEAR(accuracy(cm(860, 40, 38, 62)), 0.9220, 5e-5);
  EXPECT_NEAR(f1_score(cm(81, 4, 2, 8)), 0.7273, 5e-5);
  EXPECT_NEAR(accuracy(cm(81, 4, 2, 8)), 0.9368, 5e-5);
}

TEST(Metrics, DegenerateCases) {
  EXPECT_EQ(f1_score(cm(10, 0, 0, 0)), 0.0);
  EXPECT_EQ(accuracy(cm(0, 0, 0, 0)), 0.0);
  EXPECT_EQ(f1_score(cm(5, 0, 0, 5)), 1.0);
  EXPECT_EQ(accuracy(cm(5, 0, 0, 5)), 1.0);
}

TEST(Evaluate, PerfectAndAllNormal) {
  const std::vector<TimeSeries> set{{"a", {1}, Label::kNormal}, {"b", {2}, Label::kAnomalous},
                                    {"c", {3}, Label::kNormal}, {"d", {4}, Label::kAnomalous}};
  const auto perfect = evaluate([](const TimeSeries& s) { return s.label == Label::kAnomalous; }, set);
  EXPECT_EQ(perfect.f1, 1.0);
  EXPECT_EQ(perfect.accuracy, 1.0);
  EXPECT_EQ(perfect.confusion, cm(2, 0, 0, 2));
  const auto lazy = evaluate([](const TimeSeries&) { return false; }, set);
  EXPECT_EQ(lazy.f1, 0.0);
  EXPECT_EQ(lazy.confusion, cm(2, 0, 2, 0));
  EXPECT_EQ(lazy.confusion.total(), set.size());
}

TEST(Evaluate, UnlabeledSeriesRejected) {
  const std::vector<TimeSeries> set{{"a", {1}, Label::kUnlabeled}};
  try {
    evaluate([](const TimeSeries&) { return false; }, set);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnlabeledSeries);
  }
}

TEST(Evaluate, JsonShape) {
  const auto j = to_json(make_report(cm(1, 2, 3, 4)));
  EXPECT_EQ(j["confusion"]["tn"], 1);
  EXPECT_EQ(j["confusion"]["fp"], 2);
  EXPECT_EQ(j["confusion"]["fn"], 3);
  EXPECT_EQ(j["confusion"]["tp"], 4);
  EXPECT_DOUBLE_EQ(j["f1"].get<double>(), 8.0 / 13.0);
  EXPECT_DOUBLE_EQ(j["accuracy"].get<double>(), 0.5);
}
