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

#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "warpwatch/http_server.hpp"
#include "warpwatch/model_io.hpp"

using namespace warpwatch;
using nlohmann::json;

namespace {

class Http : public ::testing::Test {
 protected:
  void start(ServiceConfig config) {
    service_ = std::make_unique<ReviewService>(std::move(config));
    server_ = std::make_unique<HttpServer>(*service_);
    port_ = server_->bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Result post(const std::string& path, const json& body) {
    return client_->Post(path, body.dump(), "application/json");
  }
  httplib::Result post_raw(const std::string& path, const std::string& body) {
    return client_->Post(path, body, "application/json");
  }
  httplib::Result get(const std::string& path) { return client_->Get(path); }

  static json series_body(const TimeSeries& s) {
    return {{"series", {{"id", s.id}, {"values", s.values}}}};
  }

  std::unique_ptr<ReviewService> service_;
  std::unique_ptr<HttpServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

NormalModel toy_model() {
  return assemble_model({"R", {0.1, 1.25, 2.5, 3.75}, Label::kNormal}, oracle::toy_paths(), 4, 2,
                        Aggregator::kMin, ThresholdMode::kMinSuppOverCount);
}

}  // namespace

TEST_F(Http, NoModelYet) {
  start({});
  auto r = post("/detect", series_body({"q", {1, 2, 3}, Label::kUnlabeled}));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(get("/model")->status, 404);
  EXPECT_EQ(get("/model/heatmap")->status, 404);
  auto q = get("/queue");
  ASSERT_EQ(q->status, 200);
  EXPECT_TRUE(json::parse(q->body)["items"].empty());
}

TEST_F(Http, ModelUploadAndDownloadAreByteIdentical) {
  start({});
  const auto split = fixture::synthetic_split(11, 10, 0, 1);
  const std::string text = dump_models(fixture::train_on(split.training));
  auto r = post_raw("/model", text);
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(json::parse(r->body)["model_version"], 1);
  auto g = get("/model");
  ASSERT_EQ(g->status, 200);
  EXPECT_EQ(g->body, text);
  EXPECT_EQ(g->get_header_value("X-Model-Version"), "1");

  EXPECT_EQ(post_raw("/model", "{\"version\":1}")->status, 400);
  EXPECT_EQ(post_raw("/model", "not json")->status, 400);
  auto wrong = json::parse(text);
  wrong["version"] = 7;
  EXPECT_EQ(post("/model", wrong)->status, 400);
}

TEST_F(Http, DetectRepresentative) {
  start({});
  const auto split = fixture::synthetic_split(12, 10, 0, 1);
  const auto models = fixture::train_on(split.training);
  post_raw("/model", dump_models(models));
  auto r = post("/detect?explain=1", series_body(models[0].representative));
  ASSERT_EQ(r->status, 200) << r->body;
  const auto body = json::parse(r->body);
  EXPECT_EQ(body["score"], 1.0);
  EXPECT_EQ(body["classification"], "normal");
  EXPECT_EQ(body["model_version"], 1);
  EXPECT_FALSE(body.contains("item_id"));
  EXPECT_EQ(body["path"].size(), models[0].representative.size());
  EXPECT_EQ(body["per_step_flags"].size(), models[0].representative.size() - 1);

  const auto plain = json::parse(post("/detect", series_body(models[0].representative))->body);
  EXPECT_FALSE(plain.contains("path"));
}

TEST_F(Http, DetectRejectsBadInput) {
  start({});
  const auto split = fixture::synthetic_split(13, 10, 0, 1);
  post_raw("/model", dump_models(fixture::train_on(split.training)));
  EXPECT_EQ(post("/detect", {{"series", {{"id", "e"}, {"values", json::array()}}}})->status, 400);
  EXPECT_EQ(post("/detect", {{"series", {{"values", {1, "x"}}}}})->status, 400);
  EXPECT_EQ(post("/detect", {{"nothing", 1}})->status, 400);
  EXPECT_EQ(post_raw("/detect", "{")->status, 400);
  // A bare series object is accepted too.
  EXPECT_EQ(post("/detect", {{"values", {1, 2, 3}}})->status, 200);
}

TEST_F(Http, ReviewLoop) {
  ServiceConfig config;
  config.band = {0.0, 1.0};
  start(config);
  const auto split = fixture::synthetic_split(14, 10, 3, 1);
  post_raw("/model", dump_models(fixture::train_on(split.training)));

  std::vector<std::uint64_t> ids;
  for (const auto& s : split.stream) {
    const auto body = json::parse(post("/detect", series_body(s))->body);
    EXPECT_EQ(body["classification"], "uncertain");
    ids.push_back(body["item_id"].get<std::uint64_t>());
  }
  auto queue = json::parse(get("/queue?limit=2&offset=1")->body);
  ASSERT_EQ(queue["items"].size(), 2u);
  EXPECT_EQ(queue["items"][0]["item_id"], ids[1]);
  EXPECT_EQ(queue["items"][0]["series_id"], split.stream[1].id);
  EXPECT_EQ(queue["items"][0]["status"], "pending");
  EXPECT_EQ(queue["limit"], 2);
  EXPECT_EQ(get("/queue?limit=-1")->status, 400);
  EXPECT_EQ(get("/queue?status=bogus")->status, 400);

  auto item = get("/queue/" + std::to_string(ids[0]));
  ASSERT_EQ(item->status, 200);
  const auto detail = json::parse(item->body);
  EXPECT_EQ(detail["series"]["values"].size(), split.stream[0].values.size());
  EXPECT_TRUE(detail["outcome"].contains("path"));
  EXPECT_TRUE(detail.contains("representative"));
  EXPECT_EQ(get("/queue/999")->status, 404);

  auto fb = post("/feedback", {{"item_id", ids[0]}, {"label", "normal"}});
  ASSERT_EQ(fb->status, 200) << fb->body;
  EXPECT_EQ(fb->get_header_value("X-Model-Version"), "2");
  EXPECT_EQ(json::parse(fb->body)["model_version"], 2);
  EXPECT_EQ(post("/feedback", {{"item_id", ids[0]}, {"label", "normal"}})->status, 409);
  EXPECT_EQ(post("/feedback", {{"item_id", 999}, {"label", "normal"}})->status, 404);
  EXPECT_EQ(post("/feedback", {{"item_id", ids[1]}, {"label", "?"}})->status, 400);
  EXPECT_EQ(post("/feedback", {{"label", "normal"}})->status, 400);

  EXPECT_EQ(json::parse(get("/queue")->body)["items"].size(), split.stream.size() - 1);
  const auto labeled = json::parse(get("/queue?status=labeled_normal")->body);
  ASSERT_EQ(labeled["items"].size(), 1u);
  EXPECT_EQ(labeled["items"][0]["item_id"], ids[0]);
  EXPECT_EQ(json::parse(get("/queue?status=all")->body)["items"].size(), split.stream.size());
  EXPECT_EQ(get("/model")->get_header_value("X-Model-Version"), "2");
}

TEST_F(Http, ToyModelHeatmap) {
  start({});
  post_raw("/model", dump_models(std::vector{toy_model()}));
  auto r = get("/model/heatmap?pattern=0");
  ASSERT_EQ(r->status, 200) << r->body;
  const auto body = json::parse(r->body);
  ASSERT_EQ(body["rows"], 4);
  ASSERT_EQ(body["cols"], 4);
  const auto cells = oracle::toy_cells();
  std::uint64_t peak = 0;
  for (const auto& [rc, t] : cells) peak = std::max<std::uint64_t>(peak, t[0] + t[1] + t[2]);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const auto it = cells.find({i, j});
      const double expected =
          it == cells.end() ? 0.0
                            : static_cast<double>(it->second[0] + it->second[1] + it->second[2]) /
                                  static_cast<double>(peak);
      EXPECT_DOUBLE_EQ(body["values"][i][j].get<double>(), expected) << i << "," << j;
    }
  }
  // Heaviest interior cell is the shared step (1,1).
  double best = -1;
  std::pair<int, int> where;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == 3 && j == 3) continue;
      if (body["values"][i][j].get<double>() > best) {
        best = body["values"][i][j].get<double>();
        where = {i, j};
      }
    }
  }
  EXPECT_EQ(where, (std::pair<int, int>{1, 1}));
  EXPECT_DOUBLE_EQ(body["diagonal_mass"].get<double>(), 1.0);
  EXPECT_EQ(get("/model/heatmap?pattern=3")->status, 404);
  EXPECT_EQ(get("/model/heatmap?pattern=x")->status, 400);
}

TEST_F(Http, SeriesLookup) {
  start({});
  const auto split = fixture::synthetic_split(15, 10, 1, 0);
  post_raw("/model", dump_models(fixture::train_on(split.training)));
  post("/detect", series_body(split.stream[0]));
  auto r = get("/series/" + split.stream[0].id);
  ASSERT_EQ(r->status, 200);
  const auto body = json::parse(r->body);
  EXPECT_EQ(body["values"].size(), split.stream[0].values.size());
  EXPECT_TRUE(body["outcome"].contains("score"));
  EXPECT_EQ(get("/series/unknown")->status, 404);
}

TEST_F(Http, CorsPreflight) {
  start({});
  auto r = client_->Options("/detect");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 204);
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
}
