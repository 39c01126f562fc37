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
#include <vector>

#include <nlohmann/json.hpp>

#include "warpwatch/time_series.hpp"

namespace warpwatch {

enum class AnomalyKind { kSpike, kLevelShift, kShapeSwap };

std::string_view to_string(AnomalyKind kind) noexcept;
std::optional<AnomalyKind> parse_anomaly_kind(std::string_view text) noexcept;

struct SyntheticConfig {
  std::size_t n_normal = 100;
  std::size_t n_anomalous = 10;
  std::size_t length = 100;
  /// Amplitude of the smooth random time warp, as a fraction of the length.
  double warp_strength = 0.05;
  /// Standard deviation of additive Gaussian noise.
  double noise = 0.02;
  AnomalyKind anomaly_kind = AnomalyKind::kSpike;
  /// Anomaly size relative to the base waveform's peak-to-peak range.
  double anomaly_amplitude = 10.0;
  /// Fraction of the length an anomaly spans.
  double anomaly_width = 0.08;
  std::uint64_t seed = 1;
};

/// Throws kInvalidConfig on a zero length, an empty dataset or negative
/// magnitudes.
void validate(const SyntheticConfig& config);

/// The noiseless, unwarped waveform every normal series derives from.
std::vector<double> base_waveform(std::size_t length);

/// Normals first (ids n0000, n0001, ...), then anomalies (a0000, ...).
/// Deterministic for a fixed config, seed included.
std::vector<TimeSeries> generate_synthetic(const SyntheticConfig& config);

SyntheticConfig synthetic_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SyntheticConfig& config);

}  // namespace warpwatch
