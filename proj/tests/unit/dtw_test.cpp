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

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "warpwatch/dtw.hpp"
#include "warpwatch/errors.hpp"

using namespace warpwatch;

namespace {

TimeSeries ts(std::vector<double> v) { return {"s", std::move(v), Label::kUnlabeled}; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no warpwatch::Error thrown";
  return ErrorCode::kMalformedDocument;
}

}  // namespace

TEST(PointwiseDistance, Examples) {
  EXPECT_DOUBLE_EQ(pointwise_distance(3.0, 1.5), 1.5);
  EXPECT_DOUBLE_EQ(pointwise_distance(2.0, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(pointwise_distance(-1.0, 2.0), 3.0);
}

TEST(Dtw, IdenticalSeriesGiveDiagonal) {
  const auto r = dtw(ts({0, 1, 2}), ts({0, 1, 2}));
  EXPECT_EQ(r.distance, 0.0);
  ASSERT_TRUE(r.path);
  EXPECT_EQ(*r.path, (WarpingPath{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(Dtw, ElasticMatchOfRepeatedSample) {
  const auto r = dtw(ts({0, 2}), ts({0, 0, 2}));
  EXPECT_EQ(r.distance, 0.0);
  EXPECT_EQ(*r.path, (WarpingPath{{0, 0}, {0, 1}, {1, 2}}));
}

TEST(Dtw, SingleCellLattice) {
  const auto r = dtw(ts({0}), ts({5}));
  EXPECT_EQ(r.distance, 5.0);
  EXPECT_EQ(*r.path, (WarpingPath{{0, 0}}));
  EXPECT_EQ(r.cells_evaluated, 1u);
}

TEST(Dtw, MatchesEnumerationOracleOnRandomPairs) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> len(1, 7);
  for (int k = 0; k < 200; ++k) {
    const auto a = oracle::random_series(rng, len(rng));
    const auto b = oracle::random_series(rng, len(rng));
    const auto r = dtw(a, b);
    const double expected = oracle::min_path_weight(a, b);
    EXPECT_NEAR(r.distance, expected, 1e-9) << "pair " << k;
    ASSERT_TRUE(r.path);
    EXPECT_TRUE(oracle::well_formed(*r.path, a.size(), b.size()));
    EXPECT_NEAR(oracle::path_weight(a, b, *r.path), r.distance, 1e-9);
    EXPECT_LE(r.cells_evaluated, a.size() * b.size());
  }
}

TEST(Dtw, BruteForceAgreesWithDynamicProgramming) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const auto a = oracle::random_series(rng, 5);
    const auto b = oracle::random_series(rng, 1 + k % 7);
    const auto dp = dtw(a, b);
    const auto bf = brute_force_dtw(a, b);
    EXPECT_NEAR(bf.distance, dp.distance, 1e-9);
    EXPECT_EQ(*bf.path, *dp.path);
  }
  // Integer samples force many ties; both must resolve them identically.
  std::uniform_int_distribution<int> digit(0, 2);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> a(4), b(5);
    for (auto& x : a) x = digit(rng);
    for (auto& x : b) x = digit(rng);
    EXPECT_EQ(*brute_force_dtw(a, b).path, *dtw(a, b).path);
  }
}

TEST(Dtw, BruteForceExamples) {
  const std::vector<double> zero{0}, five{5}, ab{0, 1};
  const auto r = brute_force_dtw(zero, five);
  EXPECT_EQ(r.distance, 5.0);
  EXPECT_EQ(*r.path, (WarpingPath{{0, 0}}));
  EXPECT_EQ(brute_force_dtw(ab, ab).distance, 0.0);
}

TEST(Dtw, BruteForceRefusesLargeInstances) {
  const std::vector<double> big(11, 0.0), small(3, 0.0);
  EXPECT_EQ(code_of([&] { brute_force_dtw(big, small); }), ErrorCode::kInstanceTooLarge);
}

TEST(Dtw, DistanceIsSymmetric) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 100; ++k) {
    const auto a = oracle::random_series(rng, 1 + k % 9);
    const auto b = oracle::random_series(rng, 1 + (k * 7) % 11);
    EXPECT_NEAR(dtw(a, b).distance, dtw(b, a).distance, 1e-9);
  }
}

TEST(Dtw, SelfAlignmentIsDiagonalWithZeroCost) {
  std::mt19937_64 rng(3);
  const auto a = oracle::random_series(rng, 25);
  const auto r = dtw(a, a);
  EXPECT_EQ(r.distance, 0.0);
  ASSERT_EQ(r.path->size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ((*r.path)[i], (Cell{i, i}));
}

TEST(Dtw, AllOnesMaskIsNoConstraint) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const auto a = oracle::random_series(rng, 1 + k % 12);
    const auto b = oracle::random_series(rng, 1 + (k * 5) % 13);
    const auto plain = dtw(a, b);
    const auto masked = dtw(a, b, ConstraintMask(a.size(), b.size(), true));
    EXPECT_EQ(masked.distance, plain.distance);
    EXPECT_EQ(*masked.path, *plain.path);
  }
}

TEST(Dtw, MaskedDistanceMatchesRestrictedEnumeration) {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution keep(0.7);
  for (int k = 0; k < 150; ++k) {
    const std::size_t m = 1 + k % 6, n = 1 + (k * 3) % 7;
    const auto a = oracle::random_series(rng, m);
    const auto b = oracle::random_series(rng, n);
    ConstraintMask mask(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) mask.set(i, j, keep(rng));
    }
    const auto r = dtw(a, b, mask);
    const double expected =
        oracle::min_path_weight(a, b, [&](std::size_t i, std::size_t j) { return mask.allowed(i, j); });
    if (std::isinf(expected)) {
      EXPECT_FALSE(r.feasible());
      EXPECT_TRUE(std::isinf(r.distance));
    } else {
      ASSERT_TRUE(r.feasible());
      EXPECT_NEAR(r.distance, expected, 1e-9);
      for (const auto& c : *r.path) EXPECT_TRUE(mask.allowed(c.row, c.col));
    }
    EXPECT_GE(r.distance, dtw(a, b).distance);
    EXPECT_LE(r.cells_evaluated, mask.popcount());
  }
}

TEST(Dtw, FullyForbiddenMaskIsInfeasible) {
  const std::vector<double> a{1, 2, 3}, b{1, 2};
  ConstraintMask mask(3, 2, true);
  mask.set(2, 1, false);
  const auto r = dtw(a, b, mask);
  EXPECT_FALSE(r.feasible());
  EXPECT_EQ(r.distance, kInfinity);
}

TEST(Dtw, BandMaskBoundsWork) {
  std::mt19937_64 rng(8);
  const auto a = oracle::random_series(rng, 300);
  const auto b = oracle::random_series(rng, 300);
  const auto band = ConstraintMask::band(300, 300, 4);
  EXPECT_EQ(band.popcount(), 300u * 9u - 2u * (1u + 2u + 3u + 4u));
  const auto r = dtw(a, b, band);
  EXPECT_LE(r.cells_evaluated, band.popcount());
  EXPECT_GE(r.distance, dtw(a, b).distance);
}

TEST(Dtw, InputErrors) {
  const std::vector<double> empty, one{1.0}, nan{std::numeric_limits<double>::quiet_NaN()};
  EXPECT_EQ(code_of([&] { dtw(empty, one); }), ErrorCode::kEmptySeries);
  EXPECT_EQ(code_of([&] { dtw(one, empty); }), ErrorCode::kEmptySeries);
  EXPECT_EQ(code_of([&] { dtw(one, nan); }), ErrorCode::kNonFiniteSample);
  EXPECT_EQ(code_of([&] { dtw(one, one, ConstraintMask(2, 1, true)); }),
            ErrorCode::kMaskDimensionMismatch);
}

TEST(NormalizedDistance, Examples) {
  DtwResult r;
  r.distance = 10.0;
  r.path = WarpingPath{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}};
  EXPECT_DOUBLE_EQ(normalized_distance(r), 2.0);
  r.distance = 0.0;
  EXPECT_DOUBLE_EQ(normalized_distance(r), 0.0);
  EXPECT_DOUBLE_EQ(normalized_distance(dtw(ts({3, 1, 4, 1, 5}), ts({3, 1, 4, 1, 5}))), 0.0);
  EXPECT_EQ(code_of([] { normalized_distance(DtwResult{}); }), ErrorCode::kInfeasibleResult);
}

TEST(ConstraintMask, WithColsCropsAndPads) {
  ConstraintMask m(2, 3, true);
  const auto cropped = m.with_cols(2);
  EXPECT_EQ(cropped.popcount(), 4u);
  const auto padded = m.with_cols(5);
  EXPECT_EQ(padded.popcount(), 6u);
  EXPECT_FALSE(padded.allowed(0, 4));
}
