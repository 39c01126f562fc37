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

#include "warpwatch/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "warpwatch/errors.hpp"

namespace warpwatch {
namespace {

double bump(double t, double centre, double width) {
  const double z = (t - centre) / width;
  return std::exp(-z * z);
}

// Heartbeat-like template on t in [0, 1].
double base_at(double t) {
  return 0.25 * bump(t, 0.18, 0.05) - 0.15 * bump(t, 0.36, 0.02) +
         1.00 * bump(t, 0.42, 0.025) - 0.30 * bump(t, 0.48, 0.02) +
         0.40 * bump(t, 0.70, 0.07);
}

std::string make_id(char prefix, std::size_t k) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%c%04zu", prefix, k);
  return buffer;
}

// Smooth monotone map of [0,1] onto itself, fixed at both ends.
std::vector<double> random_warp(std::size_t length, double strength, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
  constexpr int kHarmonics = 3;
  double a[kHarmonics];
  for (int k = 0; k < kHarmonics; ++k) a[k] = coefficient(rng) / (k + 1);

  std::vector<double> tau(length, 0.0);
  const double denom = length > 1 ? static_cast<double>(length - 1) : 1.0;
  for (std::size_t i = 0; i < length; ++i) {
    const double t = static_cast<double>(i) / denom;
    double offset = 0.0;
    for (int k = 0; k < kHarmonics; ++k) {
      offset += a[k] * std::sin(std::numbers::pi * (k + 1) * t);
    }
    tau[i] = std::clamp(t + strength * offset, 0.0, 1.0);
  }
  for (std::size_t i = 1; i < length; ++i) tau[i] = std::max(tau[i], tau[i - 1]);
  return tau;
}

std::vector<double> normal_series(const SyntheticConfig& c, std::mt19937_64& rng) {
  const auto tau = random_warp(c.length, c.warp_strength, rng);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> values(c.length);
  for (std::size_t i = 0; i < c.length; ++i) {
    values[i] = base_at(tau[i]) + (c.noise > 0.0 ? c.noise * noise(rng) : 0.0);
  }
  return values;
}

void inject(std::vector<double>& values, const SyntheticConfig& c, std::mt19937_64& rng) {
  const auto base = base_waveform(c.length);
  const auto [lo, hi] = std::minmax_element(base.begin(), base.end());
  const double range = *hi - *lo;
  const std::size_t n = values.size();
  const std::size_t width =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(c.anomaly_width * n)), 1, n);
  std::uniform_int_distribution<std::size_t> position(
      n / 10, std::max(n / 10, n - width - n / 10));
  const std::size_t start = std::min(position(rng), n - width);

  switch (c.anomaly_kind) {
    case AnomalyKind::kSpike: {
      // Triangular burst peaking at amplitude x range.
      const double half = static_cast<double>(width) / 2.0;
      for (std::size_t k = 0; k < width; ++k) {
        const double rise = 1.0 - std::abs(static_cast<double>(k) + 0.5 - half) / half;
        values[start + k] += c.anomaly_amplitude * range * std::max(rise, 0.0);
      }
      break;
    }
    case AnomalyKind::kLevelShift: {
      for (std::size_t k = start; k < n; ++k) values[k] += c.anomaly_amplitude * range * 0.1;
      break;
    }
    case AnomalyKind::kShapeSwap: {
      // Mirror the segment in time and amplitude.
      std::vector<double> segment(values.begin() + static_cast<std::ptrdiff_t>(start),
                                  values.begin() + static_cast<std::ptrdiff_t>(start + width));
      const double mean = (*hi + *lo) / 2.0;
      for (std::size_t k = 0; k < width; ++k) {
        values[start + k] = 2.0 * mean - segment[width - 1 - k];
      }
      break;
    }
  }
}

}  // namespace

std::string_view to_string(AnomalyKind kind) noexcept {
  switch (kind) {
    case AnomalyKind::kSpike: return "spike";
    case AnomalyKind::kLevelShift: return "level_shift";
    case AnomalyKind::kShapeSwap: return "shape_swap";
  }
  return "spike";
}

std::optional<AnomalyKind> parse_anomaly_kind(std::string_view text) noexcept {
  if (text == "spike") return AnomalyKind::kSpike;
  if (text == "level_shift") return AnomalyKind::kLevelShift;
  if (text == "shape_swap") return AnomalyKind::kShapeSwap;
  return std::nullopt;
}

void validate(const SyntheticConfig& c) {
  if (c.length < 2) throw Error(ErrorCode::kInvalidConfig, "length must be at least 2");
  if (c.n_normal + c.n_anomalous == 0) {
    throw Error(ErrorCode::kInvalidConfig, "dataset would be empty");
  }
  if (!(c.warp_strength >= 0.0) || !(c.noise >= 0.0) || !(c.anomaly_amplitude >= 0.0) ||
      !(c.anomaly_width > 0.0 && c.anomaly_width <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "warp_strength, noise and anomaly_amplitude must be >= 0, "
                "anomaly_width in (0, 1]");
  }
}

std::vector<double> base_waveform(std::size_t length) {
  std::vector<double> values(length);
  const double denom = length > 1 ? static_cast<double>(length - 1) : 1.0;
  for (std::size_t i = 0; i < length; ++i) values[i] = base_at(static_cast<double>(i) / denom);
  return values;
}

std::vector<TimeSeries> generate_synthetic(const SyntheticConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);
  std::vector<TimeSeries> out;
  out.reserve(config.n_normal + config.n_anomalous);
  for (std::size_t k = 0; k < config.n_normal; ++k) {
    out.push_back({make_id('n', k), normal_series(config, rng), Label::kNormal});
  }
  for (std::size_t k = 0; k < config.n_anomalous; ++k) {
    auto values = normal_series(config, rng);
    inject(values, config, rng);
    out.push_back({make_id('a', k), std::move(values), Label::kAnomalous});
  }
  return out;
}

SyntheticConfig synthetic_config_from_json(const nlohmann::json& doc) {
  SyntheticConfig c;
  try {
    c.n_normal = doc.value("n_normal", c.n_normal);
    c.n_anomalous = doc.value("n_anomalous", c.n_anomalous);
    c.length = doc.value("length", c.length);
    c.warp_strength = doc.value("warp_strength", c.warp_strength);
    c.noise = doc.value("noise", c.noise);
    c.anomaly_amplitude = doc.value("anomaly_amplitude", c.anomaly_amplitude);
    c.anomaly_width = doc.value("anomaly_width", c.anomaly_width);
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("anomaly_kind")) {
      auto kind = parse_anomaly_kind(doc.at("anomaly_kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::kInvalidConfig, "unknown anomaly_kind");
      c.anomaly_kind = *kind;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, e.what());
  }
  validate(c);
  return c;
}

nlohmann::json to_json(const SyntheticConfig& c) {
  return {{"n_normal", c.n_normal},
          {"n_anomalous", c.n_anomalous},
          {"length", c.length},
          {"warp_strength", c.warp_strength},
          {"noise", c.noise},
          {"anomaly_kind", to_string(c.anomaly_kind)},
          {"anomaly_amplitude", c.anomaly_amplitude},
          {"anomaly_width", c.anomaly_width},
          {"seed", c.seed}};
}

}  // namespace warpwatch
