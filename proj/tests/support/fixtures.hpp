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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "warpwatch/synthetic.hpp"
#include "warpwatch/training.hpp"

namespace fixture {

struct Split {
  std::vector<warpwatch::TimeSeries> training;
  std::vector<warpwatch::TimeSeries> stream;
};

// Normals first in generate_synthetic; training takes the leading normals,
// the stream is the remainder shuffled with a fixed seed.
inline Split synthetic_split(std::uint64_t seed, std::size_t n_train, std::size_t n_normal,
                             std::size_t n_anomalous, std::size_t length = 50) {
  warpwatch::SyntheticConfig c;
  c.n_normal = n_train + n_normal;
  c.n_anomalous = n_anomalous;
  c.length = length;
  c.seed = seed;
  auto all = warpwatch::generate_synthetic(c);
  Split s;
  s.training.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.stream.assign(all.begin() + static_cast<std::ptrdiff_t>(n_train), all.end());
  std::mt19937_64 rng(seed);
  std::shuffle(s.stream.begin(), s.stream.end(), rng);
  return s;
}

inline std::vector<warpwatch::NormalModel> train_on(const std::vector<warpwatch::TimeSeries>& t,
                                                    std::size_t window = 4) {
  warpwatch::TrainingOptions o;
  o.window = window;
  return warpwatch::train({t, {}}, o);
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("warpwatch-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace fixture
