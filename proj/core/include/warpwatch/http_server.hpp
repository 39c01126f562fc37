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

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "warpwatch/service.hpp"

namespace warpwatch {

/// JSON over HTTP front end for a ReviewService.
///
///   POST /detect[?explain=1]   GET /queue[?status=&limit=&offset=]
///   GET  /queue/{item_id}      POST /feedback
///   GET|POST /model            GET /model/heatmap[?pattern=k]
///   GET  /series/{id}
class HttpServer {
 public:
  explicit HttpServer(ReviewService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Returns the bound port, or -1.
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

nlohmann::json outcome_to_json(const DetectionOutcome& outcome, bool explain);
nlohmann::json item_summary_json(const ReviewItem& item);

}  // namespace warpwatch
