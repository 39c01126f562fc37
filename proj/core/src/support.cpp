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

#include "warpwatch/support.hpp"

#include <algorithm>
#include <string>

#include "warpwatch/errors.hpp"

namespace warpwatch {

std::string_view to_string(Aggregator aggregator) noexcept {
  return aggregator == Aggregator::kMin ? "min" : "max";
}

std::optional<Aggregator> parse_aggregator(std::string_view text) noexcept {
  if (text == "min") return Aggregator::kMin;
  if (text == "max") return Aggregator::kMax;
  return std::nullopt;
}

std::uint64_t supp(const WarpingPath& path, std::size_t i, std::size_t window,
                   const WarpingMatrix& matrix, Aggregator aggregator) {
  if (i == 0 || i >= path.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "support end step " + std::to_string(i) + " of a path with " +
                    std::to_string(path.size()) + " positions");
  }
  if (window == 0) {
    throw Error(ErrorCode::kInvalidWindow, "window must be at least 1");
  }
  const std::size_t first = i > window ? i - window : 1;
  const std::size_t last = i > 1 ? i - 1 : i;

  std::uint64_t result = aggregator == Aggregator::kMin ? UINT64_MAX : 0;
  for (std::size_t j = first; j <= last; ++j) {
    const std::uint64_t product =
        encode_step(path, j).dot(matrix.at_or_empty(path[j]));
    result = aggregator == Aggregator::kMin ? std::min(result, product)
                                            : std::max(result, product);
  }
  return result;
}

double rsupp(const WarpingPath& path, std::size_t i, std::size_t window,
             const WarpingMatrix& matrix, Aggregator aggregator) {
  const std::uint64_t support = supp(path, i, window, matrix, aggregator);
  const std::uint64_t through = matrix.at_or_empty(path[i]).total();
  if (through == 0) {
    throw Error(ErrorCode::kDivisionByZeroCount,
                "no training path passes through step " + std::to_string(i));
  }
  return static_cast<double>(support) / static_cast<double>(through);
}

}  // namespace warpwatch
