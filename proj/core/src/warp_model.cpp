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

#include "warpwatch/warp_model.hpp"

#include <algorithm>
#include <string>

#include "warpwatch/errors.hpp"

namespace warpwatch {
namespace {

std::optional<double> part_threshold(const WarpingPath& path, std::size_t i,
                                     const WarpingMatrix& matrix,
                                     std::size_t window, Aggregator aggregator,
                                     ThresholdMode mode) {
  const std::uint64_t through = matrix.at_or_empty(path[i]).total();
  if (through == 0) return std::nullopt;
  const double count = static_cast<double>(through);
  const double relative =
      static_cast<double>(supp(path, i, window, matrix, aggregator)) / count;
  return mode == ThresholdMode::kMinSuppOverCount ? relative : relative / count;
}

// First and last window step of the part ending at i (see supp()).
std::pair<std::size_t, std::size_t> window_steps(std::size_t i, std::size_t window) {
  return {i > window ? i - window : 1, i > 1 ? i - 1 : i};
}

// Recomputes every threshold entry whose training parts end on, or look back
// over, a cell of `touched`. `touched` is a warping path, hence already sorted.
void refresh_thresholds(NormalModel& model, const WarpingPath& touched) {
  auto is_touched = [&](Cell c) {
    return std::binary_search(touched.begin(), touched.end(), c);
  };

  std::vector<Cell> dirty(touched.begin(), touched.end());
  for (const auto& path : model.training_paths) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      bool hit = is_touched(path[i]);
      const auto [first, last] = window_steps(i, model.window);
      for (std::size_t j = first; !hit && j <= last; ++j) hit = is_touched(path[j]);
      if (hit) dirty.push_back(path[i]);
    }
  }
  std::sort(dirty.begin(), dirty.end());
  dirty.erase(std::unique(dirty.begin(), dirty.end()), dirty.end());

  for (const Cell& c : dirty) model.thresholds.clear_cell(c);
  for (const auto& path : model.training_paths) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (!std::binary_search(dirty.begin(), dirty.end(), path[i])) continue;
      const auto dir = step_direction(path, i);
      if (!dir) continue;
      if (auto value = part_threshold(path, i, model.matrix, model.window,
                                      model.aggregator, model.threshold_mode)) {
        model.thresholds.lower_to(path[i], *dir, *value);
      }
    }
  }
}

void check_update_path(const NormalModel& model, const WarpingPath& path) {
  if (path.empty() ||
      !is_valid_path(path, path.back().row + 1, path.back().col + 1) ||
      path.back().row + 1 != model.matrix.rows() ||
      path.back().col >= model.matrix.cols()) {
    throw Error(ErrorCode::kPathOutOfBounds,
                "update path is not a warping path of the " +
                    std::to_string(model.matrix.rows()) + "x" +
                    std::to_string(model.matrix.cols()) + " model lattice");
  }
}

void refresh_mask(NormalModel& model, const WarpingPath& touched) {
  for (const Cell& c : touched) {
    const bool start = c.row == 0 && c.col == 0;
    model.mask.set(c.row, c.col, start || model.matrix.at(c).total() > 0);
  }
}

}  // namespace

std::string_view to_string(ThresholdMode mode) noexcept {
  return mode == ThresholdMode::kMinSuppOverCount ? "min_supp_over_count"
                                                  : "min_rsupp_over_count";
}

std::optional<ThresholdMode> parse_threshold_mode(std::string_view text) noexcept {
  if (text == "min_supp_over_count") return ThresholdMode::kMinSuppOverCount;
  if (text == "min_rsupp_over_count") return ThresholdMode::kMinRsuppOverCount;
  return std::nullopt;
}

ThresholdTensor build_thresholds(std::span<const WarpingPath> paths,
                                 const WarpingMatrix& matrix, std::size_t window,
                                 Aggregator aggregator, ThresholdMode mode) {
  if (window < 2) {
    throw Error(ErrorCode::kInvalidWindow,
                "window must be greater than 1, got " + std::to_string(window));
  }
  for (const auto& path : paths) {
    if (window >= path.size()) {
      throw Error(ErrorCode::kWindowTooLarge,
                  "window " + std::to_string(window) +
                      " is not shorter than a training path of length " +
                      std::to_string(path.size()));
    }
  }
  ThresholdTensor tensor(matrix.rows(), matrix.cols());
  for (const auto& path : paths) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      const auto dir = step_direction(path, i);
      if (!dir) continue;
      if (auto value = part_threshold(path, i, matrix, window, aggregator, mode)) {
        tensor.lower_to(path[i], *dir, *value);
      }
    }
  }
  return tensor;
}

NormalModel assemble_model(TimeSeries representative,
                           std::vector<WarpingPath> paths, std::size_t cols,
                           std::size_t window, Aggregator aggregator,
                           ThresholdMode mode) {
  NormalModel model;
  const std::size_t rows = representative.size();
  model.representative = std::move(representative);
  model.matrix = build_matrix(paths, rows, cols);
  model.mask = derive_mask(model.matrix);
  model.thresholds = build_thresholds(paths, model.matrix, window, aggregator, mode);
  model.window = window;
  model.aggregator = aggregator;
  model.threshold_mode = mode;
  model.training_paths = std::move(paths);
  return model;
}

void update_normal(NormalModel& model, const WarpingPath& path) {
  check_update_path(model, path);
  model.matrix.add_path(path);
  refresh_mask(model, path);
  model.training_paths.push_back(path);
  refresh_thresholds(model, path);
}

void update_anomalous(NormalModel& model, const WarpingPath& path_ref) {
  // path_ref may alias an element of training_paths, which is erased below.
  const WarpingPath path = path_ref;
  check_update_path(model, path);
  model.matrix.subtract_path(path);
  refresh_mask(model, path);
  auto& stored = model.training_paths;
  auto it = std::find(stored.rbegin(), stored.rend(), path);
  if (it != stored.rend()) stored.erase(std::next(it).base());
  refresh_thresholds(model, path);
}

}  // namespace warpwatch
