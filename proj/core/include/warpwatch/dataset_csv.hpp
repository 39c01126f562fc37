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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "warpwatch/time_series.hpp"

namespace warpwatch {

/// One series per row: `id,label,v1,v2,...` with label in {normal,
/// anomalous, ?}. Blank lines and lines starting with '#' are skipped. Rows
/// may differ in length.
std::vector<TimeSeries> read_dataset(std::istream& in);
std::vector<TimeSeries> read_dataset(const std::filesystem::path& file);

/// Samples are written in shortest round-trip form.
void write_dataset(std::ostream& out, std::span<const TimeSeries> series);
void write_dataset(const std::filesystem::path& file, std::span<const TimeSeries> series);

/// `id,group` rows mapping series to pattern groups.
std::map<std::string, std::string> read_partition(const std::filesystem::path& file);

}  // namespace warpwatch
