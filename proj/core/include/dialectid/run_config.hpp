/*
 * Copyright 2026 The dialectid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialectid/corpus.hpp"
#include "dialectid/ensemble.hpp"
#include "dialectid/eval.hpp"
#include "dialectid/predfile.hpp"
#include "dialectid/preprocess.hpp"
#include "dialectid/trainer.hpp"

namespace dialectid {

inline constexpr std::string_view kTrainSplit = "train";
inline constexpr std::string_view kDevSplit = "dev";
inline constexpr std::string_view kTestSplit = "test";

/// Where the data comes from: either explicit split files, or one file that
/// is split by `split`.
struct CorpusSources {
  /// Concatenated in order; extra entries are auxiliary training sets.
  std::vector<std::filesystem::path> train;
  std::optional<std::filesystem::path> dev;
  std::optional<std::filesystem::path> test;

  std::optional<std::filesystem::path> full;
  std::optional<SplitSpec> split;
};

struct NgramConfig {
  int n_min = 2;
  int n_max = 4;
  std::size_t max_features = 50000;
};

struct BackendConfig {
  std::string model_id;
  BackendKind kind = BackendKind::kNativeBaseline;
  NgramConfig ngram;
  TrainConfig train;
  /// External backends: split name -> prediction file.
  std::map<std::string, std::filesystem::path> predictions;
};

struct EvaluationConfig {
  Average average = Average::kMacro;
  int digits = 2;
};

struct RunConfig {
  CorpusSources corpus;
  CleaningConfig cleaning;
  bool drop_empty = false;
  std::vector<BackendConfig> backends;
  VotePolicy vote;
  /// False when model_priority was left for the pipeline to fill from dev
  /// scores.
  bool explicit_priority = false;
  EvaluationConfig evaluation;
  std::filesystem::path output_dir;
};

/// Parses the JSON run description. Relative paths resolve against
/// `base_dir`. Throws ParseError / ValidationError.
RunConfig parse_run_config(std::string_view json_text,
                           const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Checks cross-field invariants and that every referenced input exists.
void validate_run_config(const RunConfig& config);

/// Replaces every seed in the config: the split gets `seed`, backend i gets
/// `seed + i` so the ensemble members stay distinct.
void override_seeds(RunConfig& config, std::uint64_t seed);

/// Canonical JSON echo of the effective configuration.
std::string run_config_json(const RunConfig& config);

/// Canonical JSON of one native backend's hyperparameters.
std::string backend_config_json(const BackendConfig& backend);

}  // namespace dialectid
