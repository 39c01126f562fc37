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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "warpwatch/detector.hpp"
#include "warpwatch/time_series.hpp"
#include "warpwatch/warp_model.hpp"

namespace warpwatch {

enum class ItemStatus { kPending, kLabeledNormal, kLabeledAnomalous, kExpired };

std::string_view to_string(ItemStatus status) noexcept;
std::optional<ItemStatus> parse_item_status(std::string_view text) noexcept;

using TimePoint = std::chrono::system_clock::time_point;
using ClockFn = std::function<TimePoint()>;

struct ReviewItem {
  std::uint64_t item_id = 0;
  TimeSeries series;
  DetectionOutcome outcome;
  /// Model version the outcome was computed against.
  std::uint64_t model_version = 0;
  TimePoint queued_at;
  ItemStatus status = ItemStatus::kPending;
};

/// One applied expert verdict, as stored in the feedback log.
struct FeedbackEvent {
  std::uint64_t item_id = 0;
  std::size_t pattern_id = 0;
  Label label = Label::kNormal;
  WarpingPath path;
  /// Model version after the event was applied.
  std::uint64_t version = 0;

  bool operator==(const FeedbackEvent&) const = default;
};

nlohmann::json to_json(const FeedbackEvent& event);
FeedbackEvent feedback_event_from_json(const nlohmann::json& doc);

/// Applies the events in order to a copy of the initial models.
std::vector<NormalModel> replay_feedback(std::vector<NormalModel> initial,
                                         std::span<const FeedbackEvent> events);

/// Immutable view handed to readers.
struct ModelSnapshot {
  std::uint64_t version = 0;
  std::vector<NormalModel> models;
};

struct ServiceConfig {
  UncertaintyBand band{0.25, 0.30};
  /// Pending items older than this expire; zero disables expiry.
  std::chrono::seconds ttl{0};
  /// initial.json + feedback.jsonl live here when set.
  std::optional<std::filesystem::path> data_dir;
};

struct DetectResult {
  DetectionOutcome outcome;
  std::uint64_t model_version = 0;
  std::optional<std::uint64_t> item_id;
};

struct StoredSeries {
  TimeSeries series;
  DetectionOutcome outcome;
  std::uint64_t model_version = 0;
};

enum class FeedbackStatus { kApplied, kUnknownItem, kNotPending };

struct FeedbackResult {
  FeedbackStatus status = FeedbackStatus::kApplied;
  std::uint64_t model_version = 0;
};

/// Review-loop state: a versioned model snapshot, the queue of uncertain
/// detections and the append-only feedback log.
///
/// Readers take a shared_ptr to the front snapshot and never block on the
/// writer. The writer owns a second copy (the back buffer), replays the
/// previous event plus the new one onto it and swaps it to the front. If a
/// reader still holds the old buffer, the writer copies the front instead.
class ReviewService {
 public:
  explicit ReviewService(ServiceConfig config, ClockFn clock = nullptr);

  /// Replaces the models; pending items expire, the log restarts and the
  /// version is bumped. Persists initial.json when a data dir is set.
  std::uint64_t load(std::vector<NormalModel> models);

  /// Restores initial.json and replays feedback.jsonl from the data dir.
  /// Returns false when the directory holds no model yet.
  bool restore();

  bool has_model() const;
  std::shared_ptr<const ModelSnapshot> snapshot() const;

  /// Throws on invalid series; returns nullopt when no model is loaded.
  std::optional<DetectResult> detect(const TimeSeries& series);

  FeedbackResult feedback(std::uint64_t item_id, Label label);

  /// FIFO by queue time, optionally filtered by status.
  std::vector<ReviewItem> queue(std::optional<ItemStatus> status, std::size_t limit,
                                std::size_t offset);
  std::optional<ReviewItem> item(std::uint64_t item_id);
  std::optional<StoredSeries> series(const std::string& id) const;

  std::vector<NormalModel> initial_models() const;
  std::vector<FeedbackEvent> feedback_log() const;

  const ServiceConfig& config() const noexcept { return config_; }

 private:
  void expire_stale_locked(TimePoint now);
  void persist_initial(const std::vector<NormalModel>& models, std::uint64_t version) const;
  void append_log(const FeedbackEvent& event) const;
  void claim_back_buffer();

  ServiceConfig config_;
  ClockFn clock_;

  mutable std::mutex front_mutex_;
  std::shared_ptr<ModelSnapshot> front_;

  // Writer-only state.
  mutable std::mutex write_mutex_;
  std::shared_ptr<ModelSnapshot> back_;
  std::optional<FeedbackEvent> back_missing_;
  std::vector<NormalModel> initial_;
  std::vector<FeedbackEvent> log_;

  mutable std::mutex items_mutex_;
  std::map<std::uint64_t, ReviewItem> items_;
  std::map<std::string, StoredSeries> series_;
  std::uint64_t next_item_id_ = 1;
};

}  // namespace warpwatch
