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

#include "dialectid/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "dialectid/error.hpp"

namespace dialectid {
namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double f1_of(double precision, double recall) {
  const double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

// Rounds half away from zero at `digits` decimals, so JSON and text agree.
double rounded(double value, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(value * scale) / scale;
}

std::string fixed(double value, int digits) {
  return fmt::format("{:.{}f}", rounded(value, digits), digits);
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> label_space)
    : label_space_(std::move(label_space)),
      counts_(label_space_.size() * label_space_.size(), 0) {}

std::uint64_t ConfusionMatrix::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : counts_) sum += c;
  return sum;
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
  std::uint64_t sum = 0;
  for (std::size_t k = 0; k < num_classes(); ++k) sum += at(k, k);
  return sum;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t gold) const {
  std::uint64_t sum = 0;
  for (std::size_t j = 0; j < num_classes(); ++j) sum += at(gold, j);
  return sum;
}

std::uint64_t ConfusionMatrix::column_sum(std::size_t pred) const {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < num_classes(); ++i) sum += at(i, pred);
  return sum;
}

ConfusionMatrix confusion_matrix(std::span<const std::string> gold,
                                 std::span<const std::string> pred,
                                 const std::vector<std::string>& label_space) {
  if (gold.size() != pred.size()) {
    throw ValidationError(fmt::format("{} gold labels but {} predictions",
                                      gold.size(), pred.size()));
  }
  if (gold.empty()) throw ValidationError("nothing to score");
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t k = 0; k < label_space.size(); ++k) {
    if (!index.emplace(label_space[k], k).second) {
      throw ValidationError("duplicate label '" + label_space[k] +
                            "' in label space");
    }
  }
  const auto lookup = [&](const std::string& label, std::string_view side) {
    const auto it = index.find(label);
    if (it == index.end()) {
      throw ValidationError(fmt::format("unknown {} label '{}'", side, label));
    }
    return it->second;
  };
  ConfusionMatrix matrix(label_space);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    matrix.add(lookup(gold[i], "gold"), lookup(pred[i], "predicted"));
  }
  return matrix;
}

Average parse_average(std::string_view name) {
  if (name == "macro") return Average::kMacro;
  if (name == "weighted") return Average::kWeighted;
  throw ValidationError("unknown average '" + std::string(name) +
                        "' (expected macro or weighted)");
}

std::string_view to_string(Average average) {
  return average == Average::kMacro ? "macro" : "weighted";
}

double macro_f1(const ConfusionMatrix& matrix) {
  return metrics_report(matrix).macro_f1;
}

MetricsReport metrics_report(const ConfusionMatrix& matrix) {
  MetricsReport report;
  report.total = matrix.total();
  if (report.total == 0) throw ValidationError("empty confusion matrix");
  const std::size_t k = matrix.num_classes();
  double f1_sum = 0.0;
  double weighted_sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    ClassMetrics m;
    m.label = matrix.label_space()[c];
    m.support = matrix.row_sum(c);
    m.precision = ratio(matrix.at(c, c), matrix.column_sum(c));
    m.recall = ratio(matrix.at(c, c), m.support);
    m.f1 = f1_of(m.precision, m.recall);
    f1_sum += m.f1;
    weighted_sum += m.f1 * static_cast<double>(m.support);
    report.per_class.push_back(std::move(m));
  }
  report.macro_f1 = k == 0 ? 0.0 : 100.0 * f1_sum / static_cast<double>(k);
  report.weighted_f1 =
      100.0 * weighted_sum / static_cast<double>(report.total);
  report.accuracy = 100.0 * ratio(matrix.trace(), report.total);
  return report;
}

ConfusionMatrix score_predictions(const Corpus& gold,
                                  const PredictionSet& predictions) {
  check_alignment(predictions, gold.ids());
  std::vector<std::string> gold_labels;
  gold_labels.reserve(gold.size());
  for (const auto& ex : gold.examples()) {
    if (!ex.label) {
      throw ValidationError("gold example '" + ex.id + "' has no label");
    }
    gold_labels.push_back(*ex.label);
  }
  std::set<std::string> space(gold.label_space().begin(),
                              gold.label_space().end());
  space.insert(predictions.label_space.begin(), predictions.label_space.end());
  const std::vector<std::string> labels = predictions.labels();
  return confusion_matrix(gold_labels, labels,
                          std::vector<std::string>(space.begin(), space.end()));
}

ResultsTable compare_models(std::span<const NamedReport> reports,
                            Average average) {
  ResultsTable table;
  table.average = average;
  for (const auto& r : reports) {
    table.rows.push_back({r.model_id,
                          r.display_name.empty() ? r.model_id : r.display_name,
                          r.report.f1(average), r.report.accuracy,
                          r.is_ensemble});
  }
  return table;
}

std::string format_report_text(const MetricsReport& report, int digits,
                               Average average) {
  std::size_t width = 5;
  for (const auto& c : report.per_class) width = std::max(width, c.label.size());
  std::string out;
  out += fmt::format("{}-averaged F1: {}\n", to_string(average),
                     fixed(report.f1(average), digits));
  out += fmt::format("Accuracy:          {}\n", fixed(report.accuracy, digits));
  out += fmt::format("Examples:          {}\n\n", report.total);
  out += fmt::format("{:<{}}  {:>9}  {:>9}  {:>9}  {:>7}\n", "Label", width,
                     "Precision", "Recall", "F1", "Support");
  for (const auto& c : report.per_class) {
    out += fmt::format("{:<{}}  {:>9}  {:>9}  {:>9}  {:>7}\n", c.label, width,
                       fixed(100.0 * c.precision, digits),
                       fixed(100.0 * c.recall, digits),
                       fixed(100.0 * c.f1, digits), c.support);
  }
  return out;
}

std::string format_report_tsv(const MetricsReport& report, int digits) {
  std::string out = "label\tprecision\trecall\tf1\tsupport\n";
  for (const auto& c : report.per_class) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", c.label,
                       fixed(100.0 * c.precision, digits),
                       fixed(100.0 * c.recall, digits),
                       fixed(100.0 * c.f1, digits), c.support);
  }
  out += fmt::format("macro_f1\t\t\t{}\t{}\n", fixed(report.macro_f1, digits),
                     report.total);
  out += fmt::format("weighted_f1\t\t\t{}\t{}\n",
                     fixed(report.weighted_f1, digits), report.total);
  out += fmt::format("accuracy\t\t\t{}\t{}\n", fixed(report.accuracy, digits),
                     report.total);
  return out;
}

std::string format_report_json(const MetricsReport& report, int digits) {
  nlohmann::ordered_json j;
  j["macro_f1"] = rounded(report.macro_f1, digits);
  j["weighted_f1"] = rounded(report.weighted_f1, digits);
  j["accuracy"] = rounded(report.accuracy, digits);
  j["total"] = report.total;
  auto& rows = j["per_class"] = nlohmann::ordered_json::array();
  for (const auto& c : report.per_class) {
    rows.push_back({{"label", c.label},
                    {"precision", rounded(100.0 * c.precision, digits)},
                    {"recall", rounded(100.0 * c.recall, digits)},
                    {"f1", rounded(100.0 * c.f1, digits)},
                    {"support", c.support}});
  }
  return j.dump(2) + "\n";
}

std::string format_confusion_tsv(const ConfusionMatrix& matrix) {
  std::string out = "gold\\pred";
  for (const auto& label : matrix.label_space()) out += "\t" + label;
  out += '\n';
  for (std::size_t i = 0; i < matrix.num_classes(); ++i) {
    out += matrix.label_space()[i];
    for (std::size_t j = 0; j < matrix.num_classes(); ++j) {
      out += fmt::format("\t{}", matrix.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string format_results_text(const ResultsTable& table, int digits) {
  std::size_t width = 5;
  for (const auto& row : table.rows) {
    width = std::max(width, row.display_name.size());
  }
  const std::string f1_header = fmt::format("F1 ({})", to_string(table.average));
  const std::string rule(width + 2 + 14 + 2 + 10, '-');
  std::string out;
  out += fmt::format("{:<{}}  {:>14}  {:>10}\n", "Model", width, f1_header,
                     "Accuracy");
  out += rule + '\n';
  bool separated = false;
  for (const auto& row : table.rows) {
    if (row.is_ensemble && !separated) {
      out += rule + '\n';
      separated = true;
    }
    out += fmt::format("{:<{}}  {:>14}  {:>10}\n", row.display_name, width,
                       fixed(row.f1, digits), fixed(row.accuracy, digits));
  }
  out += rule + '\n';
  return out;
}

std::string format_results_tsv(const ResultsTable& table, int digits) {
  std::string out =
      fmt::format("model\tf1_{}\taccuracy\tensemble\n", to_string(table.average));
  for (const auto& row : table.rows) {
    out += fmt::format("{}\t{}\t{}\t{}\n", row.model_id, fixed(row.f1, digits),
                       fixed(row.accuracy, digits),
                       row.is_ensemble ? "yes" : "no");
  }
  return out;
}

std::string format_results_json(const ResultsTable& table, int digits) {
  nlohmann::ordered_json j;
  j["metric"] = fmt::format("{}_f1", to_string(table.average));
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"model_id", row.model_id},
                    {"f1", rounded(row.f1, digits)},
                    {"accuracy", rounded(row.accuracy, digits)},
                    {"ensemble", row.is_ensemble}});
  }
  return j.dump(2) + "\n";
}

}  // namespace dialectid
