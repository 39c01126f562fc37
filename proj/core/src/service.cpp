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

#include "warpwatch/service.hpp"

#include <fstream>

#include "warpwatch/errors.hpp"
#include "warpwatch/hitl.hpp"
#include "warpwatch/model_io.hpp"

namespace warpwatch {
namespace {

constexpr const char* kInitialFile = "initial.json";
constexpr const char* kLogFile = "feedback.jsonl";
constexpr const char* kVersionFile = "initial_version";

}  // namespace

std::string_view to_string(ItemStatus status) noexcept {
  switch (status) {
    case ItemStatus::kPending: return "pending";
    case ItemStatus::kLabeledNormal: return "labeled_normal";
    case ItemStatus::kLabeledAnomalous: return "labeled_anomalous";
    case ItemStatus::kExpired: return "expired";
  }
  return "pending";
}

std::optional<ItemStatus> parse_item_status(std::string_view text) noexcept {
  for (auto s : {ItemStatus::kPending, ItemStatus::kLabeledNormal,
                 ItemStatus::kLabeledAnomalous, ItemStatus::kExpired}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

nlohmann::json to_json(const FeedbackEvent& event) {
  return {{"item_id", event.item_id},
          {"pattern_id", event.pattern_id},
          {"label", to_string(event.label)},
          {"path", path_to_json(event.path)},
          {"version", event.version}};
}

FeedbackEvent feedback_event_from_json(const nlohmann::json& doc) {
  try {
    FeedbackEvent event;
    event.item_id = doc.at("item_id").get<std::uint64_t>();
    event.pattern_id = doc.at("pattern_id").get<std::size_t>();
    const auto label = parse_label(doc.at("label").get<std::string>());
    if (!label || *label == Label::kUnlabeled) {
      throw Error(ErrorCode::kMalformedDocument, "feedback label must be normal or anomalous");
    }
    event.label = *label;
    event.path = path_from_json(doc.at("path"));
    event.version = doc.at("version").get<std::uint64_t>();
    return event;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument, e.what());
  }
}

std::vector<NormalModel> replay_feedback(std::vector<NormalModel> initial,
                                         std::span<const FeedbackEvent> events) {
  for (const auto& e : events) apply_verdict(initial, e.pattern_id, e.path, e.label);
  return initial;
}

ReviewService::ReviewService(ServiceConfig config, ClockFn clock)
    : config_(std::move(config)), clock_(std::move(clock)) {
  validate_band(config_.band);
  if (!clock_) clock_ = [] { return std::chrono::system_clock::now(); };
}

std::uint64_t ReviewService::load(std::vector<NormalModel> models) {
  if (models.empty()) throw Error(ErrorCode::kMalformedDocument, "no models to load");
  std::lock_guard writer(write_mutex_);
  const std::uint64_t version = (front_ ? front_->version : 0) + 1;

  persist_initial(models, version);
  initial_ = models;
  log_.clear();
  back_missing_.reset();
  back_ = std::make_shared<ModelSnapshot>(ModelSnapshot{version, models});
  auto front = std::make_shared<ModelSnapshot>(ModelSnapshot{version, std::move(models)});
  {
    std::lock_guard lock(front_mutex_);
    front_ = std::move(front);
  }
  {
    std::lock_guard lock(items_mutex_);
    for (auto& [id, item] : items_) {
      if (item.status == ItemStatus::kPending) item.status = ItemStatus::kExpired;
    }
  }
  return version;
}

bool ReviewService::restore() {
  if (!config_.data_dir) return false;
  const auto initial_file = *config_.data_dir / kInitialFile;
  if (!std::filesystem::exists(initial_file)) return false;

  auto initial = load_models(initial_file);
  std::vector<FeedbackEvent> events;
  if (std::ifstream in(*config_.data_dir / kLogFile); in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        events.push_back(feedback_event_from_json(nlohmann::json::parse(line)));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedDocument, std::string("feedback log: ") + e.what());
      }
    }
  }
  auto current = replay_feedback(initial, events);
  std::uint64_t version = 1;
  if (!events.empty()) {
    version = events.back().version;
  } else if (std::ifstream v(*config_.data_dir / kVersionFile); v) {
    v >> version;
  }

  std::lock_guard writer(write_mutex_);
  initial_ = std::move(initial);
  log_ = std::move(events);
  back_missing_.reset();
  back_ = std::make_shared<ModelSnapshot>(ModelSnapshot{version, current});
  std::lock_guard lock(front_mutex_);
  front_ = std::make_shared<ModelSnapshot>(ModelSnapshot{version, std::move(current)});
  return true;
}

bool ReviewService::has_model() const {
  std::lock_guard lock(front_mutex_);
  return front_ != nullptr;
}

std::shared_ptr<const ModelSnapshot> ReviewService::snapshot() const {
  std::lock_guard lock(front_mutex_);
  return front_;
}

std::optional<DetectResult> ReviewService::detect(const TimeSeries& series) {
  validate_series(series);
  const auto snap = snapshot();
  if (!snap) return std::nullopt;

  DetectResult result;
  result.outcome = score_against(series, snap->models, config_.band);
  result.model_version = snap->version;

  std::lock_guard lock(items_mutex_);
  if (result.outcome.classification == Classification::kUncertain) {
    ReviewItem item;
    item.item_id = next_item_id_++;
    item.series = series;
    item.outcome = result.outcome;
    item.model_version = snap->version;
    item.queued_at = clock_();
    result.item_id = item.item_id;
    items_.emplace(item.item_id, std::move(item));
  }
  if (!series.id.empty()) series_[series.id] = {series, result.outcome, snap->version};
  return result;
}

FeedbackResult ReviewService::feedback(std::uint64_t item_id, Label label) {
  if (label == Label::kUnlabeled) {
    throw Error(ErrorCode::kUnlabeledSeries, "feedback label must be normal or anomalous");
  }
  std::lock_guard writer(write_mutex_);

  FeedbackEvent event;
  {
    std::lock_guard lock(items_mutex_);
    expire_stale_locked(clock_());
    const auto it = items_.find(item_id);
    if (it == items_.end()) return {FeedbackStatus::kUnknownItem, 0};
    if (it->second.status != ItemStatus::kPending) {
      return {FeedbackStatus::kNotPending, front_->version};
    }
    event.item_id = item_id;
    event.pattern_id = it->second.outcome.pattern_id;
    event.path = it->second.outcome.path;
    event.label = label;
  }

  event.version = front_->version + 1;
  append_log(event);

  claim_back_buffer();
  if (back_missing_) {
    apply_verdict(back_->models, back_missing_->pattern_id, back_missing_->path,
                  back_missing_->label);
  }
  apply_verdict(back_->models, event.pattern_id, event.path, event.label);
  back_->version = event.version;
  log_.push_back(event);
  back_missing_ = event;
  {
    std::lock_guard lock(front_mutex_);
    std::swap(front_, back_);
  }
  {
    std::lock_guard lock(items_mutex_);
    items_.at(item_id).status = label == Label::kNormal ? ItemStatus::kLabeledNormal
                                                        : ItemStatus::kLabeledAnomalous;
  }
  return {FeedbackStatus::kApplied, event.version};
}

std::vector<ReviewItem> ReviewService::queue(std::optional<ItemStatus> status,
                                             std::size_t limit, std::size_t offset) {
  std::lock_guard lock(items_mutex_);
  expire_stale_locked(clock_());
  std::vector<ReviewItem> out;
  std::size_t skipped = 0;
  for (const auto& [id, item] : items_) {
    if (status && item.status != *status) continue;
    if (skipped++ < offset) continue;
    if (out.size() >= limit) break;
    out.push_back(item);
  }
  return out;
}

std::optional<ReviewItem> ReviewService::item(std::uint64_t item_id) {
  std::lock_guard lock(items_mutex_);
  expire_stale_locked(clock_());
  const auto it = items_.find(item_id);
  if (it == items_.end()) return std::nullopt;
  return it->second;
}

std::optional<StoredSeries> ReviewService::series(const std::string& id) const {
  std::lock_guard lock(items_mutex_);
  const auto it = series_.find(id);
  if (it == series_.end()) return std::nullopt;
  return it->second;
}

std::vector<NormalModel> ReviewService::initial_models() const {
  std::lock_guard writer(write_mutex_);
  return initial_;
}

std::vector<FeedbackEvent> ReviewService::feedback_log() const {
  std::lock_guard writer(write_mutex_);
  return log_;
}

void ReviewService::expire_stale_locked(TimePoint now) {
  if (config_.ttl.count() <= 0) return;
  for (auto& [id, item] : items_) {
    if (item.status == ItemStatus::kPending && now - item.queued_at > config_.ttl) {
      item.status = ItemStatus::kExpired;
    }
  }
}

void ReviewService::persist_initial(const std::vector<NormalModel>& models,
                                    std::uint64_t version) const {
  if (!config_.data_dir) return;
  std::filesystem::create_directories(*config_.data_dir);
  save_models(*config_.data_dir / kInitialFile, models);
  std::ofstream(*config_.data_dir / kVersionFile, std::ios::trunc) << version << '\n';
  std::ofstream truncate(*config_.data_dir / kLogFile, std::ios::trunc);
  if (!truncate) throw Error(ErrorCode::kInvalidConfig, "cannot write feedback log");
}

void ReviewService::append_log(const FeedbackEvent& event) const {
  if (!config_.data_dir) return;
  std::ofstream out(*config_.data_dir / kLogFile, std::ios::app);
  out << to_json(event).dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kInvalidConfig, "cannot append to feedback log");
}

// A reader that fetched the previous front may still hold it; then start
// over from a copy of the current front instead of waiting.
void ReviewService::claim_back_buffer() {
  if (back_.use_count() <= 1) return;
  back_ = std::make_shared<ModelSnapshot>(*front_);
  back_missing_.reset();
}

}  // namespace warpwatch
