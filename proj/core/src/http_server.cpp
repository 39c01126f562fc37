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

#include "warpwatch/http_server.hpp"

#include <charconv>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>

#include <httplib.h>

#include "warpwatch/errors.hpp"
#include "warpwatch/model_io.hpp"
#include "warpwatch/training.hpp"

namespace warpwatch {
namespace {

constexpr const char* kJson = "application/json";
constexpr std::size_t kDefaultLimit = 50;

void reply(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void fail(httplib::Response& res, int status, std::string message) {
  reply(res, status, {{"error", std::move(message)}});
}

std::optional<std::uint64_t> parse_uint(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<std::uint64_t> query_uint(const httplib::Request& req, const char* key,
                                        std::uint64_t fallback, bool& bad) {
  if (!req.has_param(key)) return fallback;
  auto v = parse_uint(req.get_param_value(key));
  if (!v) bad = true;
  return v;
}

bool truthy(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return false;
  const auto v = req.get_param_value(key);
  return v == "1" || v == "true" || v == "yes";
}

std::int64_t epoch_ms(TimePoint t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

TimeSeries series_from_json(const nlohmann::json& body) {
  const nlohmann::json& doc = body.contains("series") ? body.at("series") : body;
  if (!doc.is_object()) throw Error(ErrorCode::kMalformedDocument, "series must be an object");
  TimeSeries series;
  if (doc.contains("id")) series.id = doc.at("id").get<std::string>();
  const auto& values = doc.at("values");
  if (!values.is_array()) throw Error(ErrorCode::kMalformedDocument, "values must be an array");
  for (const auto& v : values) {
    if (!v.is_number()) throw Error(ErrorCode::kMalformedDocument, "values must be numbers");
    series.values.push_back(v.get<double>());
  }
  if (doc.contains("label") && !doc.at("label").is_null()) {
    const auto label = parse_label(doc.at("label").get<std::string>());
    if (!label) throw Error(ErrorCode::kUnknownLabelToken, "unknown label");
    series.label = *label;
  }
  validate_series(series);
  return series;
}

nlohmann::json series_to_json(const TimeSeries& s) {
  return {{"id", s.id}, {"label", to_string(s.label)}, {"values", s.values}};
}

}  // namespace

nlohmann::json outcome_to_json(const DetectionOutcome& outcome, bool explain) {
  nlohmann::json out = {{"score", outcome.score},
                        {"classification", to_string(outcome.classification)},
                        {"pattern_id", outcome.pattern_id},
                        {"infeasible", outcome.infeasible}};
  if (explain) {
    out["per_step_flags"] = outcome.per_step_flags;
    out["path"] = path_to_json(outcome.path);
  }
  return out;
}

nlohmann::json item_summary_json(const ReviewItem& item) {
  return {{"item_id", item.item_id},
          {"series_id", item.series.id},
          {"score", item.outcome.score},
          {"classification", to_string(item.outcome.classification)},
          {"pattern_id", item.outcome.pattern_id},
          {"model_version", item.model_version},
          {"queued_at", epoch_ms(item.queued_at)},
          {"status", to_string(item.status)}};
}

struct HttpServer::Impl {
  explicit Impl(ReviewService& s) : service(s) { routes(); }

  ReviewService& service;
  httplib::Server server;

  void routes();
  void post_detect(const httplib::Request& req, httplib::Response& res);
  void get_queue(const httplib::Request& req, httplib::Response& res);
  void get_item(const httplib::Request& req, httplib::Response& res);
  void post_feedback(const httplib::Request& req, httplib::Response& res);
  void get_model(const httplib::Request& req, httplib::Response& res);
  void post_model(const httplib::Request& req, httplib::Response& res);
  void get_heatmap(const httplib::Request& req, httplib::Response& res);
  void get_series(const httplib::Request& req, httplib::Response& res);
};

void HttpServer::Impl::routes() {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Expose-Headers", "X-Model-Version"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  auto bind = [this](auto method) {
    return [this, method](const httplib::Request& req, httplib::Response& res) {
      try {
        (this->*method)(req, res);
      } catch (const Error& e) {
        fail(res, 400, e.what());
      } catch (const nlohmann::json::exception& e) {
        fail(res, 400, e.what());
      } catch (const std::exception& e) {
        fail(res, 500, e.what());
      }
    };
  };
  server.Post("/detect", bind(&Impl::post_detect));
  server.Get("/queue", bind(&Impl::get_queue));
  server.Get(R"(/queue/(\d+))", bind(&Impl::get_item));
  server.Post("/feedback", bind(&Impl::post_feedback));
  server.Get("/model", bind(&Impl::get_model));
  server.Post("/model", bind(&Impl::post_model));
  server.Get("/model/heatmap", bind(&Impl::get_heatmap));
  server.Get(R"(/series/([^/]+))", bind(&Impl::get_series));
}

void HttpServer::Impl::post_detect(const httplib::Request& req, httplib::Response& res) {
  const TimeSeries series = series_from_json(nlohmann::json::parse(req.body));
  const auto result = service.detect(series);
  if (!result) return fail(res, 409, "no model loaded");
  auto body = outcome_to_json(result->outcome, truthy(req, "explain"));
  body["model_version"] = result->model_version;
  if (result->item_id) body["item_id"] = *result->item_id;
  reply(res, 200, body);
}

void HttpServer::Impl::get_queue(const httplib::Request& req, httplib::Response& res) {
  std::optional<ItemStatus> status = ItemStatus::kPending;
  if (req.has_param("status")) {
    const auto text = req.get_param_value("status");
    if (text == "all") {
      status.reset();
    } else {
      status = parse_item_status(text);
      if (!status) return fail(res, 400, "unknown status '" + text + "'");
    }
  }
  bool bad = false;
  const auto limit = query_uint(req, "limit", kDefaultLimit, bad);
  const auto offset = query_uint(req, "offset", 0, bad);
  if (bad) return fail(res, 400, "limit and offset must be non-negative integers");

  nlohmann::json items = nlohmann::json::array();
  for (const auto& item : service.queue(status, *limit, *offset)) {
    items.push_back(item_summary_json(item));
  }
  const auto snap = service.snapshot();
  reply(res, 200,
        {{"items", items},
         {"limit", *limit},
         {"offset", *offset},
         {"model_version", snap ? snap->version : 0}});
}

void HttpServer::Impl::get_item(const httplib::Request& req, httplib::Response& res) {
  const auto id = parse_uint(req.matches[1].str());
  const auto item = id ? service.item(*id) : std::nullopt;
  if (!item) return fail(res, 404, "unknown item");
  auto body = item_summary_json(*item);
  body["series"] = series_to_json(item->series);
  body["outcome"] = outcome_to_json(item->outcome, true);
  const auto snap = service.snapshot();
  if (snap && item->outcome.pattern_id < snap->models.size()) {
    body["representative"] =
        series_to_json(snap->models[item->outcome.pattern_id].representative);
  }
  reply(res, 200, body);
}

void HttpServer::Impl::post_feedback(const httplib::Request& req, httplib::Response& res) {
  const auto doc = nlohmann::json::parse(req.body);
  if (!doc.contains("item_id") || !doc.at("item_id").is_number_unsigned()) {
    return fail(res, 400, "item_id must be a non-negative integer");
  }
  const auto label = parse_label(doc.value("label", std::string{}));
  if (!label || *label == Label::kUnlabeled) {
    return fail(res, 400, "label must be 'normal' or 'anomalous'");
  }
  const auto item_id = doc.at("item_id").get<std::uint64_t>();
  const auto result = service.feedback(item_id, *label);
  switch (result.status) {
    case FeedbackStatus::kUnknownItem: return fail(res, 404, "unknown item");
    case FeedbackStatus::kNotPending: return fail(res, 409, "item is not pending");
    case FeedbackStatus::kApplied: break;
  }
  res.set_header("X-Model-Version", std::to_string(result.model_version));
  reply(res, 200, {{"item_id", item_id}, {"model_version", result.model_version}});
}

void HttpServer::Impl::get_model(const httplib::Request&, httplib::Response& res) {
  const auto snap = service.snapshot();
  if (!snap) return fail(res, 404, "no model loaded");
  res.set_header("X-Model-Version", std::to_string(snap->version));
  res.status = 200;
  res.set_content(dump_models(snap->models), kJson);
}

void HttpServer::Impl::post_model(const httplib::Request& req, httplib::Response& res) {
  auto models = parse_models(req.body);
  const std::size_t count = models.size();
  const auto version = service.load(std::move(models));
  res.set_header("X-Model-Version", std::to_string(version));
  reply(res, 200, {{"model_version", version}, {"patterns", count}});
}

void HttpServer::Impl::get_heatmap(const httplib::Request& req, httplib::Response& res) {
  const auto snap = service.snapshot();
  if (!snap) return fail(res, 404, "no model loaded");
  bool bad = false;
  const auto pattern = query_uint(req, "pattern", 0, bad);
  if (bad) return fail(res, 400, "pattern must be a non-negative integer");
  if (*pattern >= snap->models.size()) return fail(res, 404, "unknown pattern");

  const Heatmap map = validate_model_visual(snap->models[*pattern]);
  nlohmann::json grid = nlohmann::json::array();
  for (std::size_t r = 0; r < map.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < map.cols; ++c) row.push_back(map.at(r, c));
    grid.push_back(std::move(row));
  }
  res.set_header("X-Model-Version", std::to_string(snap->version));
  reply(res, 200,
        {{"pattern_id", *pattern},
         {"rows", map.rows},
         {"cols", map.cols},
         {"values", std::move(grid)},
         {"diagonal_mass", map.diagonal_mass},
         {"model_version", snap->version}});
}

void HttpServer::Impl::get_series(const httplib::Request& req, httplib::Response& res) {
  const auto stored = service.series(req.matches[1].str());
  if (!stored) return fail(res, 404, "unknown series");
  auto body = series_to_json(stored->series);
  body["outcome"] = outcome_to_json(stored->outcome, true);
  body["model_version"] = stored->model_version;
  reply(res, 200, body);
}

HttpServer::HttpServer(ReviewService& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}
int HttpServer::bind_to_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}
bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }
void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }
void HttpServer::stop() { impl_->server.stop(); }

}  // namespace warpwatch
