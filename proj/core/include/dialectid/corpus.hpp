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
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace dialectid {

/// One tweet record.
struct LabeledExample {
  std::string id;
  std::string content;
  std::optional<std::string> label;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

enum class TableFormat { kTsv, kCsv };

/// Parses "tsv"/"csv" (case-sensitive). Throws ValidationError otherwise.
TableFormat parse_table_format(std::string_view name);
/// Picks the format from a ".csv" extension; everything else is TSV.
TableFormat format_from_extension(const std::filesystem::path& path);

/// An ordered, immutable collection of examples plus a label space.
///
/// The label space is sorted by code point (byte order of UTF-8) and free of
/// duplicates; class index k refers to label_space()[k]. Example order is the
/// file order and is preserved by every operation in this library.
class Corpus {
 public:
  Corpus() = default;

  /// Label space is derived from the labels that occur in `examples`.
  explicit Corpus(std::vector<LabeledExample> examples);

  /// Uses an explicit label space, which must be sorted, duplicate-free and
  /// contain every label in `examples`. Splits use this to inherit the
  /// parent's space.
  Corpus(std::vector<LabeledExample> examples,
         std::vector<std::string> label_space);

  const std::vector<LabeledExample>& examples() const noexcept {
    return examples_;
  }
  const std::vector<std::string>& label_space() const noexcept {
    return label_space_;
  }
  std::size_t size() const noexcept { return examples_.size(); }
  bool empty() const noexcept { return examples_.empty(); }

  /// True when every example carries a label.
  bool fully_labeled() const noexcept;

  /// Index of `label` in the label space; nullopt if absent.
  std::optional<std::size_t> class_index(std::string_view label) const;

  std::vector<std::string> ids() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<LabeledExample> examples_;
  std::vector<std::string> label_space_;
};

/// Sorted distinct labels observed in `examples`.
std::vector<std::string> derive_label_space(
    const std::vector<LabeledExample>& examples);

/// Parses a corpus table. Columns are located by header name: `id` and
/// `content` are required, `label` is optional, other columns are ignored.
/// An empty label cell means "unlabeled".
Corpus parse_corpus(std::string_view text, TableFormat format);
Corpus load_corpus(const std::filesystem::path& path, TableFormat format);
Corpus load_corpus(const std::filesystem::path& path);

/// Serializes with an `id, content[, label]` header. The label column is
/// written when any example is labeled.
std::string format_corpus(const Corpus& corpus, TableFormat format);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                 TableFormat format);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

/// Concatenates corpora in order (e.g. a main training file plus auxiliary
/// datasets). Ids must remain unique.
Corpus concatenate(const std::vector<Corpus>& parts);

struct SplitSpec {
  double train_fraction = 0.8;
  double dev_fraction = 0.1;
  double test_fraction = 0.1;
  std::uint64_t seed = 0;

  /// Throws ValidationError unless each fraction is in [0,1] and they sum to
  /// 1 within 1e-9.
  void validate() const;
};

/// Parses a fraction written as a decimal ("0.8") or a ratio ("10/13").
double parse_fraction(std::string_view text);

struct SplitSizes {
  std::size_t train;
  std::size_t dev;
  std::size_t test;
};

/// round(N * fraction) for train and dev; test takes the remainder.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

/// Partitions `corpus` into train/dev/test. Membership is chosen by a seeded
/// shuffle; within each split the original order is kept. Every split
/// inherits the parent label space.
std::tuple<Corpus, Corpus, Corpus> split_corpus(const Corpus& corpus,
                                                const SplitSpec& spec);

}  // namespace dialectid
