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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "warpwatch/baseline.hpp"
#include "warpwatch/dataset_csv.hpp"
#include "warpwatch/detector.hpp"
#include "warpwatch/errors.hpp"
#include "warpwatch/hitl.hpp"
#include "warpwatch/http_server.hpp"
#include "warpwatch/metrics.hpp"
#include "warpwatch/model_io.hpp"
#include "warpwatch/service.hpp"
#include "warpwatch/synthetic.hpp"
#include "warpwatch/training.hpp"

namespace ww = warpwatch;
namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitParse = 2;
constexpr int kExitTraining = 3;

bool is_parse_error(ww::ErrorCode code) {
  switch (code) {
    case ww::ErrorCode::kMalformedRow:
    case ww::ErrorCode::kUnknownLabelToken:
    case ww::ErrorCode::kMalformedDocument:
    case ww::ErrorCode::kSchemaVersionMismatch:
      return true;
    default:
      return false;
  }
}

/// Thrown for bad flag values discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ww::UncertaintyBand parse_band(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("band must be 'low,high', got '" + text + "'");
  try {
    ww::UncertaintyBand band{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    ww::validate_band(band);
    return band;
  } catch (const std::logic_error&) {
    throw UsageError("band must be 'low,high', got '" + text + "'");
  } catch (const ww::Error& e) {
    throw UsageError(e.what());
  }
}

struct WindowSweep {
  std::size_t first = 0, last = 0, step = 1;
};

WindowSweep parse_sweep(const std::string& text) {
  WindowSweep s;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> s.first >> c1 >> s.last >> c2 >> s.step) || c1 != ':' || c2 != ':' ||
      s.step == 0 || s.first > s.last || !in.eof()) {
    throw UsageError("--sweep-window must be a:b:step with a <= b and step > 0");
  }
  return s;
}

std::vector<ww::TimeSeries> read_csv(const std::string& path, const char* what) {
  if (!fs::exists(path)) throw UsageError(std::string(what) + " '" + path + "' does not exist");
  return ww::read_dataset(fs::path(path));
}

std::vector<ww::NormalModel> read_models(const std::string& path) {
  if (!fs::exists(path)) throw UsageError("model '" + path + "' does not exist");
  return ww::load_models(path);
}

bool is_anomalous(const ww::TimeSeries& s, const std::vector<ww::NormalModel>& models) {
  return ww::score_against(s, models).classification == ww::Classification::kAnomalous;
}

void print_report_table(const char* name, const ww::EvaluationReport& r) {
  std::printf("%-10s %6zu %6zu %6zu %6zu  %.4f  %.4f\n", name, r.confusion.tn, r.confusion.fp,
              r.confusion.fn, r.confusion.tp, r.f1, r.accuracy);
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string data, out, representative, partition;
  std::size_t window = 5;
  std::string aggregator = "min";
  std::string threshold_mode = "min_supp_over_count";
  std::string threshold_source = "leave_one_out";
  std::optional<double> score_threshold;
  std::string format = "table";
};

int run_train(const TrainArgs& a) {
  ww::TrainingOptions options;
  options.window = a.window;
  options.aggregator = *ww::parse_aggregator(a.aggregator);
  options.threshold_mode = *ww::parse_threshold_mode(a.threshold_mode);
  options.threshold_source = *ww::parse_threshold_source(a.threshold_source);
  options.score_threshold = a.score_threshold;

  ww::TrainingSet training;
  training.series = read_csv(a.data, "dataset");
  if (!a.partition.empty()) {
    if (!fs::exists(a.partition)) throw UsageError("partition '" + a.partition + "' does not exist");
    training.partition = ww::read_partition(a.partition);
  }
  if (!a.representative.empty()) {
    for (auto& r : read_csv(a.representative, "representative file")) {
      options.representatives.emplace(r.id, std::move(r));
    }
  }

  std::vector<ww::NormalModel> models;
  try {
    models = ww::train(training, options);
  } catch (const ww::Error& e) {
    if (is_parse_error(e.code())) throw;
    std::cerr << "warpwatch train: " << e.what() << '\n';
    return kExitTraining;
  }
  ww::save_models(a.out, models);

  nlohmann::json summary = nlohmann::json::array();
  for (std::size_t k = 0; k < models.size(); ++k) {
    const auto& m = models[k];
    const auto heat = ww::validate_model_visual(m);
    std::vector<double> scores = m.training_scores;
    std::sort(scores.begin(), scores.end());
    const double median = scores.empty() ? 0.0 : scores[scores.size() / 2];
    summary.push_back({{"pattern_id", k},
                       {"representative", m.representative.id},
                       {"rows", m.matrix.rows()},
                       {"cols", m.matrix.cols()},
                       {"training_series", m.training_count()},
                       {"score_threshold", m.score_threshold},
                       {"score_min", scores.empty() ? 0.0 : scores.front()},
                       {"score_median", median},
                       {"score_max", scores.empty() ? 0.0 : scores.back()},
                       {"diagonal_mass", heat.diagonal_mass}});
  }
  if (a.format == "json") {
    std::cout << nlohmann::json{{"models", summary}}.dump(2) << '\n';
  } else {
    std::printf("%-7s %-14s %9s %6s %9s %9s %9s %9s %9s\n", "pattern", "representative", "dims",
                "n", "theta", "min", "median", "max", "diag");
    for (const auto& s : summary) {
      const std::string dims = std::to_string(s["rows"].get<std::size_t>()) + "x" +
                               std::to_string(s["cols"].get<std::size_t>());
      std::printf("%-7zu %-14s %9s %6zu %9.4f %9.4f %9.4f %9.4f %9.4f\n",
                  s["pattern_id"].get<std::size_t>(),
                  s["representative"].get<std::string>().c_str(), dims.c_str(),
                  s["training_series"].get<std::size_t>(), s["score_threshold"].get<double>(),
                  s["score_min"].get<double>(), s["score_median"].get<double>(),
                  s["score_max"].get<double>(), s["diagonal_mass"].get<double>());
    }
  }
  std::cerr << "wrote " << models.size() << " model(s) to " << a.out << '\n';
  return 0;
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
  std::string model, data, band;
  bool explain = false;
};

int run_detect(const DetectArgs& a) {
  const auto models = read_models(a.model);
  const auto series = read_csv(a.data, "dataset");
  const ww::UncertaintyBand band = a.band.empty() ? ww::UncertaintyBand{} : parse_band(a.band);
  for (const auto& s : series) {
    const auto outcome = ww::score_against(s, models, band);
    nlohmann::json line = ww::outcome_to_json(outcome, a.explain);
    line["id"] = s.id;
    std::cout << line.dump() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string model, data, train, sweep;
  bool baseline = false;
  std::string format = "table";
};

int run_eval(const EvalArgs& a) {
  const auto test = read_csv(a.data, "dataset");

  if (!a.sweep.empty()) {
    if (a.train.empty()) throw UsageError("--sweep-window needs --train");
    const WindowSweep sweep = parse_sweep(a.sweep);
    ww::TrainingSet training{read_csv(a.train, "training set"), {}};
    nlohmann::json rows = nlohmann::json::array();
    if (a.format != "json") std::printf("%-10s %6s %6s %6s %6s  %-6s  %-6s\n", "window", "tn", "fp", "fn", "tp", "f1", "acc");
    for (std::size_t l = sweep.first; l <= sweep.last; l += sweep.step) {
      ww::TrainingOptions options;
      options.window = l;
      std::vector<ww::NormalModel> models;
      try {
        models = ww::train(training, options);
      } catch (const ww::Error& e) {
        std::cerr << "window " << l << ": " << e.what() << '\n';
        continue;
      }
      const auto report = ww::evaluate([&](const auto& s) { return is_anomalous(s, models); }, test);
      auto row = ww::to_json(report);
      row["window"] = l;
      rows.push_back(row);
      if (a.format != "json") print_report_table(std::to_string(l).c_str(), report);
    }
    if (a.format == "json") std::cout << nlohmann::json{{"sweep", rows}}.dump(2) << '\n';
    return 0;
  }

  if (a.model.empty()) throw UsageError("eval needs --model (or --sweep-window with --train)");
  const auto models = read_models(a.model);
  const auto edtwa = ww::evaluate([&](const auto& s) { return is_anomalous(s, models); }, test);

  std::optional<ww::EvaluationReport> base;
  if (a.baseline) {
    // One distance threshold per pattern; anomalous when every pattern rejects.
    std::vector<ww::BaselineModel> baselines;
    for (const auto& m : models) {
      if (!m.baseline_threshold) {
        throw UsageError("model has no baseline threshold; retrain it with this tool");
      }
      baselines.push_back({m.representative, *m.baseline_threshold});
    }
    base = ww::evaluate(
        [&](const auto& s) {
          for (const auto& b : baselines) {
            if (ww::detect_baseline(s, b) == ww::Classification::kNormal) return false;
          }
          return true;
        },
        test);
  }

  if (a.format == "json") {
    nlohmann::json out = ww::to_json(edtwa);
    if (base) out["baseline"] = ww::to_json(*base);
    std::cout << out.dump(2) << '\n';
  } else {
    std::printf("%-10s %6s %6s %6s %6s  %-6s  %-6s\n", "method", "tn", "fp", "fn", "tp", "f1", "acc");
    print_report_table("E-DTWA", edtwa);
    if (base) print_report_table("DTW_base", *base);
  }
  return 0;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string config, out, train_out;
  std::optional<std::uint64_t> seed;
  std::size_t n_train = 0;
};

int run_synth(const SynthArgs& a) {
  ww::SyntheticConfig config;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw UsageError("config '" + a.config + "' does not exist");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ww::Error(ww::ErrorCode::kMalformedDocument, a.config + ": " + e.what());
    }
    config = ww::synthetic_config_from_json(doc);
  }
  if (a.seed) config.seed = *a.seed;
  auto data = ww::generate_synthetic(config);

  if (!a.train_out.empty()) {
    if (a.n_train > config.n_normal) throw UsageError("--n-train exceeds n_normal");
    std::vector<ww::TimeSeries> training(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(a.n_train));
    data.erase(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(a.n_train));
    ww::write_dataset(fs::path(a.train_out), training);
  }
  ww::write_dataset(fs::path(a.out), data);
  std::cerr << "wrote " << data.size() << " series to " << a.out << '\n';
  return 0;
}

// ---------------------------------------------------------------- hitl-sim

struct HitlArgs {
  std::string model, data, band = "0.25,0.30", out_model;
};

int run_hitl(const HitlArgs& a) {
  auto models = read_models(a.model);
  const auto stream = read_csv(a.data, "dataset");
  const auto report = ww::simulate_hitl(std::move(models), stream, parse_band(a.band));
  if (!a.out_model.empty()) ww::save_models(a.out_model, report.final_models);
  std::cout << ww::to_json(report).dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- serve

struct ServeArgs {
  std::string model, data_dir, band, host = "0.0.0.0";
  std::optional<int> port;
  std::optional<long> ttl;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

int run_serve(const ServeArgs& a) {
  ww::ServiceConfig config;
  config.band = parse_band(a.band.empty() ? env_or("WARPWATCH_BAND", "0.25,0.30") : a.band);
  const std::string dir = a.data_dir.empty() ? env_or("WARPWATCH_DATA_DIR", "") : a.data_dir;
  if (!dir.empty()) config.data_dir = dir;
  try {
    config.ttl = std::chrono::seconds(a.ttl ? *a.ttl : std::stol(env_or("WARPWATCH_TTL_SECONDS", "0")));
    const int port = a.port ? *a.port : std::stoi(env_or("WARPWATCH_PORT", "8080"));

    ww::ReviewService service(config);
    if (!a.model.empty()) {
      service.load(read_models(a.model));
    } else if (!service.restore()) {
      std::cerr << "warpwatch serve: no model yet; POST /model to load one\n";
    }
    ww::HttpServer server(service);
    std::cerr << "listening on " << a.host << ':' << port << '\n';
    if (!server.listen(a.host, port)) {
      std::cerr << "warpwatch serve: cannot listen on port " << port << '\n';
      return kExitRuntime;
    }
  } catch (const std::logic_error& e) {
    throw UsageError(std::string("bad port/TTL value: ") + e.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpwatch: E-DTWA time-series anomaly detection"};
  app.require_subcommand(1);

  const std::vector<std::string> aggregators{"min", "max"};
  const std::vector<std::string> modes{"min_supp_over_count", "min_rsupp_over_count"};
  const std::vector<std::string> sources{"leave_one_out", "in_sample"};
  const std::vector<std::string> formats{"table", "json"};

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Build normal models from a labeled-normal CSV");
  train_cmd->add_option("--data", train.data, "Training CSV (id,label,v1,...)")->required();
  train_cmd->add_option("--out", train.out, "Model JSON to write")->required();
  train_cmd->add_option("--window", train.window, "Path-part window length")->check(CLI::Range(2, 1 << 20));
  train_cmd->add_option("--representative", train.representative, "CSV of expert representatives (id = group)");
  train_cmd->add_option("--partition", train.partition, "CSV of id,group");
  train_cmd->add_option("--aggregator", train.aggregator)->check(CLI::IsMember(aggregators));
  train_cmd->add_option("--threshold-mode", train.threshold_mode)->check(CLI::IsMember(modes));
  train_cmd->add_option("--threshold-source", train.threshold_source)->check(CLI::IsMember(sources));
  train_cmd->add_option("--score-threshold", train.score_threshold, "Expert score threshold")->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--format", train.format)->check(CLI::IsMember(formats));

  DetectArgs detect;
  auto* detect_cmd = app.add_subcommand("detect", "Score every series; one JSON line each");
  detect_cmd->add_option("--model", detect.model)->required();
  detect_cmd->add_option("--data", detect.data)->required();
  detect_cmd->add_option("--band", detect.band, "Uncertainty band low,high");
  detect_cmd->add_flag("--explain", detect.explain, "Include per-step flags and the path");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Confusion matrix, F1 and accuracy on a labeled CSV");
  eval_cmd->add_option("--model", eval.model);
  eval_cmd->add_option("--data", eval.data)->required();
  eval_cmd->add_flag("--baseline", eval.baseline, "Add the DTW_base row");
  eval_cmd->add_option("--sweep-window", eval.sweep, "Retrain per window a:b:step");
  eval_cmd->add_option("--train", eval.train, "Training CSV for --sweep-window");
  eval_cmd->add_option("--format", eval.format)->check(CLI::IsMember(formats));

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic labeled CSV");
  synth_cmd->add_option("--config", synth.config, "JSON generator config");
  synth_cmd->add_option("--out", synth.out)->required();
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--train-out", synth.train_out, "Also split off the first normals here");
  synth_cmd->add_option("--n-train", synth.n_train, "Normals moved to --train-out");

  HitlArgs hitl;
  auto* hitl_cmd = app.add_subcommand("hitl-sim", "Replay a labeled stream with a simulated expert");
  hitl_cmd->add_option("--model", hitl.model)->required();
  hitl_cmd->add_option("--data", hitl.data)->required();
  hitl_cmd->add_option("--band", hitl.band, "Uncertainty band low,high");
  hitl_cmd->add_option("--out-model", hitl.out_model, "Write the updated models here");

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP review service");
  serve_cmd->add_option("--model", serve.model);
  serve_cmd->add_option("--port", serve.port);
  serve_cmd->add_option("--host", serve.host);
  serve_cmd->add_option("--data-dir", serve.data_dir);
  serve_cmd->add_option("--band", serve.band);
  serve_cmd->add_option("--ttl", serve.ttl, "Seconds before pending items expire (0 = never)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*train_cmd) return run_train(train);
    if (*detect_cmd) return run_detect(detect);
    if (*eval_cmd) return run_eval(eval);
    if (*synth_cmd) return run_synth(synth);
    if (*hitl_cmd) return run_hitl(hitl);
    if (*serve_cmd) return run_serve(serve);
  } catch (const UsageError& e) {
    std::cerr << "warpwatch: " << e.what() << '\n';
    return kExitParse;
  } catch (const ww::Error& e) {
    std::cerr << "warpwatch: " << e.what() << '\n';
    if (is_parse_error(e.code()) || e.code() == ww::ErrorCode::kInvalidConfig) return kExitParse;
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "warpwatch: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
