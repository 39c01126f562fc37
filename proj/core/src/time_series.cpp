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

#include "warpwatch/time_series.hpp"

#include <cmath>
#include <string>

#include "warpwatch/errors.hpp"

namespace warpwatch {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kEmptySeries: return "EmptySeries";
    case ErrorCode::kNonFiniteSample: return "NonFiniteSample";
    case ErrorCode::kMaskDimensionMismatch: return "MaskDimensionMismatch";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kInfeasibleResult: return "InfeasibleResult";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kPathOutOfBounds: return "PathOutOfBounds";
    case ErrorCode::kInvalidWindow: return "InvalidWindow";
    case ErrorCode::kWindowTooLarge: return "WindowTooLarge";
    case ErrorCode::kDivisionByZeroCount: return "DivisionByZeroCount";
    case ErrorCode::kSchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kInvalidBand: return "InvalidBand";
    case ErrorCode::kEmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kUnlabeledSeries: return "UnlabeledSeries";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kUnknownLabelToken: return "UnknownLabelToken";
  }
  return "Unknown";
}

std::string_view to_string(Label label) noexcept {
  switch (label) {
    case Label::kNormal: return "normal";
    case Label::kAnomalous: return "anomalous";
    case Label::kUnlabeled: return "?";
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view token) noexcept {
  if (token == "normal") return Label::kNormal;
  if (token == "anomalous") return Label::kAnomalous;
  if (token == "?") return Label::kUnlabeled;
  return std::nullopt;
}

void validate_series(const TimeSeries& series) {
  if (series.values.empty()) {
    throw Error(ErrorCode::kEmptySeries, "series '" + series.id + "' is empty");
  }
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (!std::isfinite(series.values[i])) {
      throw Error(ErrorCode::kNonFiniteSample,
                  "series '" + series.id + "' sample " + std::to_string(i));
    }
  }
}

bool is_valid_path(const WarpingPath& path, std::size_t rows, std::size_t cols) {
  if (path.empty() || rows == 0 || cols == 0) return false;
  if (path.front() != Cell{0, 0}) return false;
  if (path.back() != Cell{rows - 1, cols - 1}) return false;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const auto& prev = path[k - 1];
    const auto& cur = path[k];
    if (cur.row < prev.row || cur.col < prev.col) return false;
    const std::size_t dr = cur.row - prev.row;
    const std::size_t dc = cur.col - prev.col;
    // Strictly advancing steps of size <= 1 also rule out repeated cells.
    if (dr > 1 || dc > 1 || (dr == 0 && dc == 0)) return false;
  }
  return true;
}

}  // namespace warpwatch
