/*
 * Copyright 2026 The Growing Spheres Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// gs: command line front end.
//
//   gs explain --data rows.csv --classifier builtin:axis:0:0.5 --index 3
//   gs batch   --data rows.csv --classifier exec:./adapter --out results.csv
//   gs sample  --d 2 --a0 1 --a1 2 --n 1000 --mode paper
//
// Exit codes: 0 success, 1 usage/IO/classifier error, 2 no enemy found.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "growing_spheres/growing_spheres.hpp"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoEnemy = 2;

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("GS_LOG");
  if (env == nullptr) return LogLevel::kError;
  const std::string value(env);
  if (value == "debug") return LogLevel::kDebug;
  if (value == "info") return LogLevel::kInfo;
  return LogLevel::kError;
}

void log(LogLevel level, const std::string& message) {
  static const LogLevel threshold = log_level();
  if (level > threshold) return;
  static constexpr const char* kNames[] = {"error", "info", "debug"};
  std::cerr << "gs: " << kNames[static_cast<int>(level)] << ": " << message
            << '\n';
}

// Flags shared by explain and batch.
struct EngineFlags {
  std::string data;
  std::string classifier;
  std::optional<std::string> label_column;
  bool no_scale = false;
  double eta = gs::Hyperparameters::kDefaultEta;
  std::size_t n_samples = gs::Hyperparameters::kDefaultSamples;
  double gamma = gs::Hyperparameters::kDefaultGamma;
  std::uint64_t seed = gs::Hyperparameters::kDefaultSeed;
  std::string mode = "paper";
  std::optional<double> radius_cap;
  double eta_floor = gs::Hyperparameters::kDefaultEtaFloor;
  bool clamp = false;
  std::optional<int> target;
  std::optional<std::string> out;
  int timeout_ms = 30000;
};

void add_engine_flags(CLI::App& cmd, EngineFlags& f) {
  cmd.add_option("--data", f.data, "CSV dataset with a header row")->required();
  cmd.add_option("--classifier", f.classifier,
                 "builtin:<kind>:... or 'exec:<path> [args]'")
      ->required();
  cmd.add_option("--label-column", f.label_column,
                 "column to drop from the features");
  cmd.add_flag("--no-scale", f.no_scale, "treat the data as already scaled");
  cmd.add_option("--eta", f.eta, "initial radius and layer width")
      ->capture_default_str();
  cmd.add_option("--n-samples", f.n_samples, "points per layer")
      ->capture_default_str();
  cmd.add_option("--gamma", f.gamma, "sparsity weight of the cost")
      ->capture_default_str();
  cmd.add_option("--seed", f.seed)->capture_default_str();
  cmd.add_option("--mode", f.mode, "layer sampling: paper or volume")
      ->check(CLI::IsMember({"paper", "volume"}))
      ->capture_default_str();
  cmd.add_option("--radius-cap", f.radius_cap,
                 "largest outer radius before giving up (default 2*sqrt(d))");
  cmd.add_option("--eta-floor", f.eta_floor, "smallest radius when halving")
      ->capture_default_str();
  cmd.add_flag("--clamp", f.clamp, "clamp generated points to [0,1]^d");
  cmd.add_option("--target", f.target, "required enemy label");
  cmd.add_option("--out", f.out, "output path (default stdout)");
  cmd.add_option("--timeout-ms", f.timeout_ms,
                 "per-batch timeout for exec classifiers")
      ->capture_default_str();
}

gs::Hyperparameters to_hyperparameters(const EngineFlags& f) {
  gs::Hyperparameters hp;
  hp.eta = f.eta;
  hp.n_samples = f.n_samples;
  hp.gamma = f.gamma;
  hp.seed = f.seed;
  hp.sampling_mode = f.mode == "volume" ? gs::SamplingMode::kVolumeUniform
                                        : gs::SamplingMode::kPaperRadiusUniform;
  hp.radius_cap = f.radius_cap;
  hp.eta_floor = f.eta_floor;
  hp.clamp_to_unit_box = f.clamp;
  if (f.target) hp.target = gs::TargetPolicy::Specific(gs::Label(*f.target));
  return hp;
}

// Everything needed to run the engine on a dataset.
struct Session {
  gs::Dataset dataset;
  gs::ScalingModel scaling = gs::ScalingModel::Identity(1);
  std::unique_ptr<gs::Classifier> classifier;
  gs::Hyperparameters hp;
};

Session open_session(const EngineFlags& f) {
  Session s;
  s.dataset = gs::read_csv_file(f.data, f.label_column);
  const std::size_t d = s.dataset.feature_names.size();
  s.scaling = f.no_scale || s.dataset.rows.empty()
                  ? gs::ScalingModel::Identity(d)
                  : gs::ScalingModel::Fit(s.dataset.rows);
  s.classifier = gs::make_classifier(f.classifier, d,
                                     std::chrono::milliseconds(f.timeout_ms));
  s.hp = to_hyperparameters(f);
  s.hp.validate(d);
  log(LogLevel::kInfo, "loaded " + std::to_string(s.dataset.rows.size()) +
                           " rows of " + std::to_string(d) + " features");
  return s;
}

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::optional<std::string>& path) {
    if (path) {
      file_.open(*path, std::ios::binary);
      if (!file_) throw gs::Error(gs::ErrorCode::kIo, "cannot write " + *path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Json to_json(const gs::FeatureVector& v) { return Json(v.vector()); }

Json to_json(const gs::CostBreakdown& c) {
  return Json{{"l2", c.l2}, {"l0", c.l0}, {"total", c.total}};
}

Json to_json(const gs::SearchDiagnostics& d) {
  return Json{{"classifier_calls", d.classifier_calls},
              {"halvings", d.halvings},
              {"layers_explored", d.layers_explored},
              {"final_layer", {d.final_layer.first, d.final_layer.second}},
              {"seed_used", d.seed_used},
              {"stream_used", d.stream_used}};
}

Json to_json(const gs::Hyperparameters& hp, std::size_t d) {
  Json out{{"eta", hp.eta},
           {"n_samples", hp.n_samples},
           {"gamma", hp.gamma},
           {"radius_cap", hp.resolved_radius_cap(d)},
           {"eta_floor", hp.eta_floor},
           {"mode", hp.sampling_mode == gs::SamplingMode::kVolumeUniform
                        ? "volume"
                        : "paper"},
           {"clamp", hp.clamp_to_unit_box}};
  if (hp.target.target()) {
    out["target"] = hp.target.target()->value();
  } else {
    out["target"] = nullptr;
  }
  return out;
}

Json explanation_json(const Session& s, std::size_t index,
                      const gs::Explanation& e) {
  std::vector<std::size_t> changed;
  for (std::size_t i = 0; i < e.move.size(); ++i) {
    if (e.move[i] != 0.0) changed.push_back(i);
  }
  std::stable_sort(changed.begin(), changed.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(e.move_original_units[a]) >
                            std::abs(e.move_original_units[b]);
                   });
  Json moves = Json::array();
  for (std::size_t i : changed) {
    moves.push_back({{"feature", s.dataset.feature_names[i]},
                     {"index", i},
                     {"move", e.move_original_units[i]},
                     {"move_scaled", e.move[i]}});
  }
  const gs::FeatureVector& x_original = s.dataset.rows[index];
  gs::FeatureVector enemy_original = x_original;
  for (std::size_t i = 0; i < enemy_original.size(); ++i) {
    enemy_original[i] += e.move_original_units[i];
  }
  const std::size_t d = x_original.size();
  return Json{{"schema", 1},
              {"index", index},
              {"label_x", e.label_x.value()},
              {"label_enemy", e.label_enemy.value()},
              {"moves", std::move(moves)},
              {"features", s.dataset.feature_names},
              {"x_original", to_json(x_original)},
              {"x", to_json(e.x)},
              {"enemy_raw", to_json(e.enemy_raw)},
              {"enemy_final", to_json(e.enemy_final)},
              {"enemy_final_original", to_json(enemy_original)},
              {"move", to_json(e.move)},
              {"move_original_units", to_json(e.move_original_units)},
              {"cost_raw", to_json(e.cost_raw)},
              {"cost_final", to_json(e.cost_final)},
              {"diagnostics", to_json(e.diagnostics)},
              {"seed", s.hp.seed},
              {"hyperparameters", to_json(s.hp, d)}};
}

int run_explain(const EngineFlags& f, std::size_t index) {
  Session s = open_session(f);
  if (index >= s.dataset.rows.size()) {
    throw gs::Error(gs::ErrorCode::kInvalidArgument,
                    "--index " + std::to_string(index) + " but dataset has " +
                        std::to_string(s.dataset.rows.size()) + " rows");
  }
  try {
    const gs::Explanation e =
        gs::explain(*s.classifier, s.dataset.rows[index], s.scaling, s.hp, index);
    Output out(f.out);
    out.stream() << explanation_json(s, index, e).dump(2) << '\n';
    log(LogLevel::kInfo, "explained row " + std::to_string(index) + " with " +
                             std::to_string(e.cost_final.l0) + " features");
  } catch (const gs::Error& err) {
    if (err.code() != gs::ErrorCode::kNoEnemyFound) throw;
    log(LogLevel::kError, err.what());
    return kExitNoEnemy;
  }
  return kExitOk;
}

std::string status_of(const gs::BatchItem& item) {
  if (item.ok()) return "OK";
  const gs::Error& e = item.error();
  if (e.code() == gs::ErrorCode::kNoEnemyFound) return "NO_ENEMY";
  if (e.is_classifier_failure()) return "CLASSIFIER_FAILURE";
  return "ERROR";
}

int run_batch(const EngineFlags& f, std::size_t workers,
              const std::optional<std::string>& summary_path) {
  Session s = open_session(f);
  const std::vector<gs::BatchItem> items = gs::explain_batch(
      *s.classifier, s.dataset.rows, s.scaling, s.hp, workers);

  std::string csv = "index,status,l2,l0,total_cost,classifier_calls\n";
  std::vector<std::size_t> sparsities;
  std::map<std::string, std::size_t> failures;
  for (const gs::BatchItem& item : items) {
    const std::string status = status_of(item);
    csv += std::to_string(item.index) + "," + status + ",";
    if (item.ok()) {
      const gs::Explanation& e = item.explanation();
      csv += gs::format_double(e.cost_final.l2) + "," +
             std::to_string(e.cost_final.l0) + "," +
             gs::format_double(e.cost_final.total) + "," +
             std::to_string(e.diagnostics.classifier_calls);
      sparsities.push_back(e.cost_final.l0);
    } else {
      csv += ",,,";
      ++failures[status];
      log(LogLevel::kInfo, "row " + std::to_string(item.index) + ": " +
                               item.error().what());
    }
    csv += '\n';
  }

  Json cdf = Json::array();
  Json max_sparsity = nullptr;
  if (!sparsities.empty()) {
    for (const gs::CdfPoint& p : gs::sparsity_cdf(sparsities)) {
      cdf.push_back({{"sparsity", p.sparsity}, {"fraction", p.fraction}});
    }
    max_sparsity = *std::max_element(sparsities.begin(), sparsities.end());
  }
  const Json summary{{"schema", 1},
                     {"observations", items.size()},
                     {"successes", sparsities.size()},
                     {"failures", failures},
                     {"max_sparsity", max_sparsity},
                     {"sparsity_cdf", std::move(cdf)},
                     {"seed", s.hp.seed},
                     {"hyperparameters",
                      to_json(s.hp, s.dataset.feature_names.size())}};

  Output out(f.out);
  out.stream() << csv;
  std::optional<std::string> target = summary_path;
  if (!target && f.out) target = *f.out + ".summary.json";
  if (target) {
    Output summary_out(target);
    summary_out.stream() << summary.dump(2) << '\n';
  } else {
    out.stream() << '\n' << summary.dump(2) << '\n';
  }
  return kExitOk;
}

struct SampleFlags {
  std::size_t d = 2;
  double a0 = 0.0;
  double a1 = 1.0;
  std::size_t n = 1000;
  std::string mode = "paper";
  std::uint64_t seed = gs::Hyperparameters::kDefaultSeed;
  std::optional<std::string> out;
};

int run_sample(const SampleFlags& f) {
  gs::LayerSpec layer{gs::FeatureVector(f.d), f.a0, f.a1};
  layer.validate();
  gs::RandomSource rng(f.seed, 0);
  const gs::SamplingMode mode = f.mode == "volume"
                                    ? gs::SamplingMode::kVolumeUniform
                                    : gs::SamplingMode::kPaperRadiusUniform;
  const gs::PointBatch points = gs::sample_layer(layer, f.n, mode, rng);

  std::string csv;
  for (std::size_t j = 0; j < f.d; ++j) csv += "x" + std::to_string(j) + ",";
  csv += "radius\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = points.row(i);
    for (double v : row) {
      gs::append_double(csv, v);
      csv += ',';
    }
    gs::append_double(csv, gs::l2_distance(row, layer.center.values()));
    csv += '\n';
  }
  Output out(f.out);
  out.stream() << csv;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterfactual explanations for black-box classifiers"};
  app.require_subcommand(1);

  EngineFlags explain_flags;
  std::size_t index = 0;
  CLI::App* explain_cmd =
      app.add_subcommand("explain", "explain one row of a dataset");
  add_engine_flags(*explain_cmd, explain_flags);
  explain_cmd->add_option("--index", index, "row to explain")
      ->capture_default_str();

  EngineFlags batch_flags;
  std::size_t workers = 1;
  std::optional<std::string> summary_path;
  CLI::App* batch_cmd = app.add_subcommand("batch", "explain every row");
  add_engine_flags(*batch_cmd, batch_flags);
  batch_cmd->add_option("--workers", workers, "parallel workers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  batch_cmd->add_option("--summary", summary_path,
                        "summary JSON path (default <out>.summary.json)");

  SampleFlags sample_flags;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "emit points of a spherical layer");
  sample_cmd->add_option("--d", sample_flags.d, "dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sample_cmd->add_option("--a0", sample_flags.a0)->capture_default_str();
  sample_cmd->add_option("--a1", sample_flags.a1)->capture_default_str();
  sample_cmd->add_option("--n", sample_flags.n)->capture_default_str();
  sample_cmd->add_option("--mode", sample_flags.mode)
      ->check(CLI::IsMember({"paper", "volume"}))
      ->capture_default_str();
  sample_cmd->add_option("--seed", sample_flags.seed)->capture_default_str();
  sample_cmd->add_option("--out", sample_flags.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*explain_cmd) return run_explain(explain_flags, index);
    if (*batch_cmd) return run_batch(batch_flags, workers, summary_path);
    if (*sample_cmd) return run_sample(sample_flags);
  } catch (const std::exception& e) {
    log(LogLevel::kError, e.what());
    return kExitError;
  }
  return kExitError;
}
