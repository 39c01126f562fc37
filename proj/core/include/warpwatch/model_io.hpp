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
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "warpwatch/warp_model.hpp"

namespace warpwatch {

inline constexpr int kModelSchemaVersion = 1;

/// Versioned JSON model document. Counters are written as [right, diag, up];
/// absent thresholds as null.
nlohmann::json serialize_model(const NormalModel& model);
NormalModel deserialize_model(const nlohmann::json& document);

/// A single model is written exactly as serialize_model() does; several
/// models are wrapped as {"version": 1, "models": [...]}. Both shapes load.
nlohmann::json serialize_models(std::span<const NormalModel> models);
std::vector<NormalModel> deserialize_models(const nlohmann::json& document);

std::string dump_models(std::span<const NormalModel> models);
std::vector<NormalModel> parse_models(const std::string& text);

void save_models(const std::filesystem::path& file,
                 std::span<const NormalModel> models);
std::vector<NormalModel> load_models(const std::filesystem::path& file);

nlohmann::json path_to_json(const WarpingPath& path);
WarpingPath path_from_json(const nlohmann::json& value);

}  // namespace warpwatch
