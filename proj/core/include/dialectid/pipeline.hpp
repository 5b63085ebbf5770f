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

#include <filesystem>
#include <map>
#include <ostream>
#include <string>

#include "dialectid/eval.hpp"
#include "dialectid/run_config.hpp"

namespace dialectid {

struct RunSummary {
  std::filesystem::path output_dir;
  /// Split name -> results table (models in config order, ensemble last).
  std::map<std::string, ResultsTable> results;
  std::vector<std::string> model_priority;
};

/// Runs clean -> split -> train/predict -> ensemble -> evaluate -> report and
/// writes everything under config.output_dir:
///
///   run.status                      "running", "complete" or "failed ..."
///   manifest.json                   config, seeds, input/output hashes
///   data/<split>.tsv                cleaned corpora
///   models/<id>.model               native baselines
///   models/<id>.manifest.json
///   <split>/predictions/<id>.tsv    per model and "ensemble"
///   <split>/metrics/<id>.{json,txt} + <id>.confusion.tsv
///   <split>/results.{txt,tsv,json}
///   <split>/agreement.{txt,tsv}
///   <split>/submission.txt          ensemble labels
///
/// Failures are rethrown as StageError after run.status records them.
RunSummary run_pipeline(const RunConfig& config, std::ostream& log);

}  // namespace dialectid
