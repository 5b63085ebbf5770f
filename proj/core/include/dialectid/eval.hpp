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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialectid/corpus.hpp"
#include "dialectid/predfile.hpp"

namespace dialectid {

/// Rows are gold classes, columns are predicted classes.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<std::string> label_space);

  const std::vector<std::string>& label_space() const noexcept {
    return label_space_;
  }
  std::size_t num_classes() const noexcept { return label_space_.size(); }

  std::uint64_t at(std::size_t gold, std::size_t pred) const {
    return counts_[gold * num_classes() + pred];
  }
  void add(std::size_t gold, std::size_t pred, std::uint64_t count = 1) {
    counts_[gold * num_classes() + pred] += count;
  }

  std::uint64_t total() const noexcept;
  std::uint64_t trace() const noexcept;
  std::uint64_t row_sum(std::size_t gold) const;
  std::uint64_t column_sum(std::size_t pred) const;

 private:
  std::vector<std::string> label_space_;
  std::vector<std::uint64_t> counts_;
};

/// Throws ValidationError on length mismatch, empty input or a label not in
/// `label_space` (the message names the label).
ConfusionMatrix confusion_matrix(std::span<const std::string> gold,
                                 std::span<const std::string> pred,
                                 const std::vector<std::string>& label_space);

enum class Average { kMacro, kWeighted };

Average parse_average(std::string_view name);
std::string_view to_string(Average average);

struct ClassMetrics {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

/// Scores in percent, kept at full precision; round only when printing.
struct MetricsReport {
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  double accuracy = 0.0;
  std::uint64_t total = 0;
  std::vector<ClassMetrics> per_class;

  double f1(Average average) const noexcept {
    return average == Average::kMacro ? macro_f1 : weighted_f1;
  }
};

/// 100 x mean per-class F1 over every class in the label space, zero-support
/// classes included; 0/0 counts as 0.
double macro_f1(const ConfusionMatrix& matrix);

MetricsReport metrics_report(const ConfusionMatrix& matrix);

/// Scores `predictions` against the gold labels of `gold`, whose ids it must
/// match in order. The label space is the gold space joined with the
/// prediction set's declared space.
ConfusionMatrix score_predictions(const Corpus& gold,
                                  const PredictionSet& predictions);

struct NamedReport {
  std::string model_id;
  MetricsReport report;
  bool is_ensemble = false;
  /// Row title in the text table; model_id when empty.
  std::string display_name;
};

struct ResultsRow {
  std::string model_id;
  std::string display_name;
  double f1 = 0.0;
  double accuracy = 0.0;
  bool is_ensemble = false;
};

struct ResultsTable {
  Average average = Average::kMacro;
  std::vector<ResultsRow> rows;
};

/// One row per report, in the given order.
ResultsTable compare_models(std::span<const NamedReport> reports,
                            Average average = Average::kMacro);

std::string format_report_text(const MetricsReport& report, int digits,
                               Average average);
std::string format_report_tsv(const MetricsReport& report, int digits);
std::string format_report_json(const MetricsReport& report, int digits);
std::string format_confusion_tsv(const ConfusionMatrix& matrix);

std::string format_results_text(const ResultsTable& table, int digits);
std::string format_results_tsv(const ResultsTable& table, int digits);
std::string format_results_json(const ResultsTable& table, int digits);

}  // namespace dialectid
