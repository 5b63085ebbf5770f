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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dialectid {

struct PredictionEntry {
  std::string example_id;
  std::string label;

  friend bool operator==(const PredictionEntry&,
                         const PredictionEntry&) = default;
};

/// One model's labels, aligned to example ids.
///
/// `label_space` and `probabilities` travel together: either both are empty
/// (hard labels only) or every entry has a probability row of length
/// |label_space| summing to 1 within 1e-6.
struct PredictionSet {
  std::string model_id;
  std::vector<PredictionEntry> entries;
  std::vector<std::string> label_space;
  std::optional<std::vector<std::vector<double>>> probabilities;

  bool has_probabilities() const noexcept { return probabilities.has_value(); }
  std::vector<std::string> ids() const;
  std::vector<std::string> labels() const;

  /// Throws ValidationError on duplicate ids, malformed probability rows or
  /// (with probabilities) labels outside the label space.
  void validate() const;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

inline constexpr double kProbabilitySumTolerance = 1e-6;

/// Prediction TSV:
///
///   # model_id: <id>                      (optional)
///   example_id<TAB>label[<TAB>p_<label>...]
///   <id><TAB><label>[<TAB><p>...]
///
/// Probabilities are written in shortest round-trip form, so re-serializing
/// a parsed file reproduces it byte for byte.
std::string format_predictions(const PredictionSet& set);
/// `fallback_model_id` is used when the file has no model_id line.
PredictionSet parse_predictions(std::string_view text,
                                std::string_view fallback_model_id);

/// Validates, then writes atomically.
void write_predictions(const PredictionSet& set,
                       const std::filesystem::path& path);
PredictionSet read_predictions(const std::filesystem::path& path);
/// Additionally requires the file's ids to equal `expected_ids` in order.
/// Throws AlignmentError naming the first offending row.
PredictionSet read_predictions(const std::filesystem::path& path,
                               const std::vector<std::string>& expected_ids);

/// Throws AlignmentError unless `set` has exactly `expected_ids` in order.
void check_alignment(const PredictionSet& set,
                     const std::vector<std::string>& expected_ids);

/// Leaderboard-style export: one label per line, LF, no header.
std::string format_submission(const PredictionSet& set);
void write_submission(const PredictionSet& set,
                      const std::filesystem::path& path);

enum class BackendKind { kNativeBaseline, kExternal };

std::string_view to_string(BackendKind kind);

struct BackendManifest {
  std::string model_id;
  BackendKind backend_kind = BackendKind::kNativeBaseline;
  /// Canonical JSON of the hyperparameters used.
  std::string config_json = "{}";
  /// SHA-256 of `config_json`.
  std::string config_fingerprint;
  /// ISO-8601 UTC.
  std::string created_at;
};

/// Fills fingerprint and timestamp. The timestamp honors SOURCE_DATE_EPOCH.
BackendManifest make_manifest(std::string model_id, BackendKind kind,
                              std::string config_json);
std::string format_manifest(const BackendManifest& manifest);
void write_manifest(const BackendManifest& manifest,
                    const std::filesystem::path& path);

/// Current UTC time as ISO-8601, or SOURCE_DATE_EPOCH when that is set.
std::string utc_timestamp();

}  // namespace dialectid
