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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "warpwatch/dtw.hpp"
#include "warpwatch/errors.hpp"
#include "warpwatch/warp_matrix.hpp"

using namespace warpwatch;

namespace {

DirectionCounts triple(std::uint32_t r, std::uint32_t d, std::uint32_t u) {
  return DirectionCounts{{r, d, u}};
}

WarpingPath random_path(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  WarpingPath p{{0, 0}};
  std::uniform_int_distribution<int> pick(0, 2);
  while (p.back().row != m - 1 || p.back().col != n - 1) {
    Cell c = p.back();
    const int d = pick(rng);
    if ((d == 0 || c.row == m - 1) && c.col < n - 1) {
      ++c.col;
    } else if ((d == 2 || c.col == n - 1) && c.row < m - 1) {
      ++c.row;
    } else {
      ++c.row;
      ++c.col;
    }
    p.push_back(c);
  }
  return p;
}

}  // namespace

TEST(EncodeStep, Examples) {
  EXPECT_EQ(encode_step(WarpingPath{{0, 0}, {0, 1}}, 1), triple(1, 0, 0));
  EXPECT_EQ(encode_step(WarpingPath{{0, 0}, {1, 1}}, 1), triple(0, 1, 0));
  EXPECT_EQ(encode_step(WarpingPath{{1, 1}, {2, 1}}, 1), triple(0, 0, 1));
}

TEST(EncodeStep, StartHasNoPredecessor) {
  try {
    encode_step(WarpingPath{{0, 0}, {1, 1}}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
}

TEST(BuildMatrix, ReproducesToyExample) {
  const auto paths = oracle::toy_paths();
  const auto m = build_matrix(paths, 4, 4);
  const auto expected_cells = oracle::toy_cells();
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const auto it = expected_cells.find({r, c});
      const oracle::Triple expected = it == expected_cells.end() ? oracle::Triple{0, 0, 0} : it->second;
      EXPECT_EQ(m.at({r, c}).counts, expected) << "cell (" << r << "," << c << ")";
    }
  }
  EXPECT_EQ(m.at({1, 1}), triple(0, 3, 0));
  EXPECT_EQ(m.at({2, 1}), triple(0, 0, 2));
  EXPECT_EQ(m.at({3, 3}), triple(2, 1, 2));
  EXPECT_EQ(m.at({0, 1}), triple(2, 0, 0));
}

TEST(BuildMatrix, EmptyAndSinglePath) {
  const auto empty = build_matrix({}, 3, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(empty.count_paths({r, c}), 0u);
  }
  const std::vector<WarpingPath> one{{{0, 0}, {1, 1}, {2, 2}}};
  const auto m = build_matrix(one, 3, 3);
  EXPECT_EQ(m.at({1, 1}), triple(0, 1, 0));
  EXPECT_EQ(m.at({2, 2}), triple(0, 1, 0));
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) total += m.count_paths({r, c});
  }
  EXPECT_EQ(total, 2u);
}

TEST(BuildMatrix, PathOutsideGridIsRejected) {
  const std::vector<WarpingPath> paths{{{0, 0}, {1, 1}, {2, 2}}};
  try {
    build_matrix(paths, 2, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPathOutOfBounds);
  }
}

TEST(BuildMatrix, MatchesOracleAndConservesMass) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 3 + trial % 9, n = 2 + (trial * 5) % 11;
    std::vector<WarpingPath> paths;
    std::size_t steps = 0;
    for (int k = 0; k < 12; ++k) {
      paths.push_back(random_path(rng, m, n));
      steps += paths.back().size() - 1;
    }
    const auto built = build_matrix(paths, m, n);
    const auto grid = oracle::accumulate(paths, m, n);
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        EXPECT_EQ(built.at({r, c}).counts, grid.at(r, c));
        EXPECT_LE(built.count_paths({r, c}), paths.size());
        total += built.count_paths({r, c});
      }
    }
    EXPECT_EQ(total, steps);
    EXPECT_EQ(built.count_paths({0, 0}), 0u);
  }
}

TEST(CountPaths, Examples) {
  const auto m = build_matrix(oracle::toy_paths(), 4, 4);
  EXPECT_EQ(m.count_paths({3, 3}), 5u);
  EXPECT_EQ(m.count_paths({0, 0}), 0u);
  EXPECT_EQ(WarpingMatrix(4, 4).count_paths({2, 2}), 0u);
  try {
    m.count_paths({4, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
}

TEST(DeriveMask, PrintedExample) {
  const auto mask = derive_mask(build_matrix(oracle::toy_paths(), 4, 4));
  const std::set<std::pair<std::size_t, std::size_t>> expected{
      {0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      EXPECT_EQ(mask.allowed(r, c), expected.count({r, c}) == 1) << r << "," << c;
    }
  }
  EXPECT_EQ(mask.popcount(), expected.size());
}

TEST(DeriveMask, EmptyAndDiagonal) {
  const auto empty = derive_mask(WarpingMatrix(3, 4));
  EXPECT_EQ(empty.popcount(), 1u);
  EXPECT_TRUE(empty.allowed(0, 0));
  const std::vector<WarpingPath> diag{{{0, 0}, {1, 1}, {2, 2}}};
  const auto mask = derive_mask(build_matrix(diag, 3, 3));
  EXPECT_EQ(mask.popcount(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(mask.allowed(i, i));
}

TEST(WarpingMatrix, SubtractClampsAtZero) {
  WarpingMatrix m(3, 3);
  m.subtract_path({{0, 0}, {1, 1}, {2, 2}});
  EXPECT_EQ(m, WarpingMatrix(3, 3));
}
