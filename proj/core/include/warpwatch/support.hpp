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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "warpwatch/warp_matrix.hpp"

namespace warpwatch {

/// How the per-step support values of a path part are combined. kMin takes
/// the weakest step of the part; kMax the strongest.
enum class Aggregator { kMin, kMax };

std::string_view to_string(Aggregator aggregator) noexcept;
std::optional<Aggregator> parse_aggregator(std::string_view text) noexcept;

/// Support of the path part that ends at path[i] (0-based, i >= 1).
///
/// The part covers the window steps j = max(i - window, 1) .. i - 1; each
/// contributes enc(path[j]) . M[path[j]], the number of training paths that
/// arrived at the same cell by the same direction. Near the start, where no
/// predecessor step exists (i == 1), the step's own product is used.
std::uint64_t supp(const WarpingPath& path, std::size_t i, std::size_t window,
                   const WarpingMatrix& matrix, Aggregator aggregator);

/// supp / count_paths(path[i]). Throws kDivisionByZeroCount when nothing in
/// the matrix passes through path[i].
double rsupp(const WarpingPath& path, std::size_t i, std::size_t window,
             const WarpingMatrix& matrix, Aggregator aggregator);

}  // namespace warpwatch
