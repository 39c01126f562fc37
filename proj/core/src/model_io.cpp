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

#include "warpwatch/model_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "warpwatch/errors.hpp"

namespace warpwatch {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedDocument, what);
}

const json& field(const json& object, const char* name) {
  if (!object.is_object() || !object.contains(name)) {
    malformed(std::string("missing field '") + name + "'");
  }
  return object.at(name);
}

json model_body(const NormalModel& model) {
  const std::size_t rows = model.matrix.rows();
  const std::size_t cols = model.matrix.cols();

  json cells = json::array();
  json mask = json::array();
  json thresholds = json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    json cell_row = json::array();
    json mask_row = json::array();
    json threshold_row = json::array();
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& c = model.matrix.at({i, j});
      cell_row.push_back({c.right(), c.diag(), c.up()});
      mask_row.push_back(model.mask.allowed(i, j) ? 1 : 0);
      json triple = json::array();
      for (std::size_t d = 0; d < kDirections; ++d) {
        auto value = model.thresholds.get({i, j}, static_cast<Direction>(d));
        triple.push_back(value ? json(*value) : json(nullptr));
      }
      threshold_row.push_back(std::move(triple));
    }
    cells.push_back(std::move(cell_row));
    mask.push_back(std::move(mask_row));
    thresholds.push_back(std::move(threshold_row));
  }

  json paths = json::array();
  for (const auto& p : model.training_paths) paths.push_back(path_to_json(p));

  json body = {
      {"representative",
       {{"id", model.representative.id}, {"values", model.representative.values}}},
      {"window", model.window},
      {"aggregator", to_string(model.aggregator)},
      {"threshold_mode", to_string(model.threshold_mode)},
      {"score_threshold", model.score_threshold},
      {"matrix", {{"rows", rows}, {"cols", cols}, {"cells", std::move(cells)}}},
      {"mask", std::move(mask)},
      {"thresholds", std::move(thresholds)},
      {"training_paths", std::move(paths)},
      {"training_scores", model.training_scores},
  };
  if (model.baseline_threshold) body["baseline_threshold"] = *model.baseline_threshold;
  return body;
}

NormalModel model_from_body(const json& doc) {
  NormalModel model;
  const auto& rep = field(doc, "representative");
  model.representative.id = field(rep, "id").get<std::string>();
  model.representative.values = field(rep, "values").get<std::vector<double>>();
  model.representative.label = Label::kNormal;

  model.window = field(doc, "window").get<std::size_t>();
  auto aggregator = parse_aggregator(field(doc, "aggregator").get<std::string>());
  if (!aggregator) malformed("unknown aggregator");
  model.aggregator = *aggregator;
  auto mode = parse_threshold_mode(field(doc, "threshold_mode").get<std::string>());
  if (!mode) malformed("unknown threshold_mode");
  model.threshold_mode = *mode;
  model.score_threshold = field(doc, "score_threshold").get<double>();

  const auto& matrix = field(doc, "matrix");
  const auto rows = field(matrix, "rows").get<std::size_t>();
  const auto cols = field(matrix, "cols").get<std::size_t>();
  if (rows != model.representative.size()) {
    malformed("matrix rows differ from representative length");
  }
  const auto& cells = field(matrix, "cells");
  const auto& mask = field(doc, "mask");
  const auto& thresholds = field(doc, "thresholds");
  auto check_grid = [&](const json& grid, const char* name) {
    if (!grid.is_array() || grid.size() != rows) {
      malformed(std::string(name) + " row count mismatch");
    }
    for (const auto& row : grid) {
      if (!row.is_array() || row.size() != cols) {
        malformed(std::string(name) + " column count mismatch");
      }
    }
  };
  check_grid(cells, "matrix.cells");
  check_grid(mask, "mask");
  check_grid(thresholds, "thresholds");

  model.matrix = WarpingMatrix(rows, cols);
  model.mask = ConstraintMask(rows, cols);
  model.thresholds = ThresholdTensor(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto& c = cells[i][j];
      if (!c.is_array() || c.size() != kDirections) malformed("counter triple expected");
      DirectionCounts counts;
      for (std::size_t d = 0; d < kDirections; ++d) {
        if (!c[d].is_number_unsigned() ||
            c[d].get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max()) {
          malformed("counters must be non-negative 32-bit integers");
        }
        counts.counts[d] = c[d].get<std::uint32_t>();
      }
      model.matrix.set({i, j}, counts);

      const int bit = mask[i][j].get<int>();
      if (bit != 0 && bit != 1) malformed("mask entries must be 0 or 1");
      model.mask.set(i, j, bit == 1);

      const auto& t = thresholds[i][j];
      if (!t.is_array() || t.size() != kDirections) malformed("threshold triple expected");
      for (std::size_t d = 0; d < kDirections; ++d) {
        if (t[d].is_null()) continue;
        const double value = t[d].get<double>();
        if (value < 0.0) malformed("negative threshold");
        model.thresholds.set({i, j}, static_cast<Direction>(d), value);
      }
    }
  }

  for (const auto& p : field(doc, "training_paths")) {
    WarpingPath path = path_from_json(p);
    for (const Cell& c : path) {
      if (c.row >= rows || c.col >= cols) malformed("training path outside lattice");
    }
    model.training_paths.push_back(std::move(path));
  }
  model.training_scores = field(doc, "training_scores").get<std::vector<double>>();
  if (doc.contains("baseline_threshold")) {
    model.baseline_threshold = doc.at("baseline_threshold").get<double>();
  }
  return model;
}

void check_version(const json& document) {
  if (!document.is_object()) malformed("document must be an object");
  if (!document.contains("version")) {
    throw Error(ErrorCode::kSchemaVersionMismatch, "document has no schema version");
  }
  const auto& version = document.at("version");
  if (!version.is_number_integer() || version.get<int>() != kModelSchemaVersion) {
    throw Error(ErrorCode::kSchemaVersionMismatch,
                "expected model schema version " +
                    std::to_string(kModelSchemaVersion) + ", got " + version.dump());
  }
}

}  // namespace

json path_to_json(const WarpingPath& path) {
  json out = json::array();
  for (const Cell& c : path) out.push_back({c.row, c.col});
  return out;
}

WarpingPath path_from_json(const json& value) {
  if (!value.is_array()) malformed("path must be an array");
  WarpingPath path;
  path.reserve(value.size());
  for (const auto& step : value) {
    if (!step.is_array() || step.size() != 2) malformed("path step must be [row, col]");
    path.push_back({step[0].get<std::size_t>(), step[1].get<std::size_t>()});
  }
  return path;
}

json serialize_model(const NormalModel& model) {
  json doc = {{"version", kModelSchemaVersion}};
  doc.update(model_body(model));
  return doc;
}

NormalModel deserialize_model(const json& document) {
  check_version(document);
  try {
    return model_from_body(document);
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

json serialize_models(std::span<const NormalModel> models) {
  if (models.size() == 1) return serialize_model(models.front());
  json list = json::array();
  for (const auto& m : models) list.push_back(model_body(m));
  return {{"version", kModelSchemaVersion}, {"models", std::move(list)}};
}

std::vector<NormalModel> deserialize_models(const json& document) {
  check_version(document);
  std::vector<NormalModel> models;
  try {
    if (document.contains("models")) {
      for (const auto& body : document.at("models")) {
        models.push_back(model_from_body(body));
      }
      if (models.empty()) malformed("model list is empty");
    } else {
      models.push_back(model_from_body(document));
    }
  } catch (const json::exception& e) {
    malformed(e.what());
  }
  return models;
}

std::string dump_models(std::span<const NormalModel> models) {
  return serialize_models(models).dump(1);
}

std::vector<NormalModel> parse_models(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    malformed(e.what());
  }
  return deserialize_models(doc);
}

void save_models(const std::filesystem::path& file,
                 std::span<const NormalModel> models) {
  std::ofstream out(file);
  if (!out) malformed("cannot open " + file.string() + " for writing");
  out << dump_models(models) << '\n';
  if (!out) malformed("failed writing " + file.string());
}

std::vector<NormalModel> load_models(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) malformed("cannot open " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_models(buffer.str());
}

}  // namespace warpwatch
