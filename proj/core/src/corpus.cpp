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

#include "dialectid/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "dialectid/error.hpp"
#include "dialectid/io.hpp"
#include "dialectid/random.hpp"
#include "dialectid/utf8.hpp"

namespace dialectid {
namespace {

struct Record {
  std::size_t line;
  std::vector<std::string> fields;
};

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

std::vector<Record> read_tsv_records(std::string_view text) {
  std::vector<Record> records;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    Record record{line, {}};
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = row.find('\t', start);
      if (tab == std::string_view::npos) {
        record.fields.emplace_back(row.substr(start));
        break;
      }
      record.fields.emplace_back(row.substr(start, tab - start));
      start = tab + 1;
    }
    records.push_back(std::move(record));
    pos = end + 1;
  }
  return records;
}

// RFC 4180: comma separated, optional double quotes, "" escapes a quote,
// quoted fields may span lines. Both LF and CRLF end a record.
std::vector<Record> read_csv_records(std::string_view text) {
  std::vector<Record> records;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    Record record{line, {}};
    std::string field;
    bool record_done = false;
    while (!record_done) {
      field.clear();
      if (pos < text.size() && text[pos] == '"') {
        ++pos;
        while (true) {
          if (pos >= text.size()) {
            throw ParseError(fmt::format(
                "line {}: unterminated quoted field", record.line));
          }
          const char c = text[pos];
          if (c == '"') {
            if (pos + 1 < text.size() && text[pos + 1] == '"') {
              field.push_back('"');
              pos += 2;
              continue;
            }
            ++pos;
            break;
          }
          if (c == '\n') ++line;
          field.push_back(c);
          ++pos;
        }
        if (pos < text.size() && text[pos] != ',' && text[pos] != '\n' &&
            text[pos] != '\r') {
          throw ParseError(fmt::format(
              "line {}: unexpected character after closing quote", line));
        }
      } else {
        while (pos < text.size() && text[pos] != ',' && text[pos] != '\n' &&
               !(text[pos] == '\r' && pos + 1 < text.size() &&
                 text[pos + 1] == '\n')) {
          if (text[pos] == '"') {
            throw ParseError(
                fmt::format("line {}: stray quote in unquoted field", line));
          }
          field.push_back(text[pos]);
          ++pos;
        }
      }
      record.fields.push_back(field);
      if (pos >= text.size()) {
        record_done = true;
      } else if (text[pos] == ',') {
        ++pos;
      } else {
        if (text[pos] == '\r') ++pos;
        ++pos;  // '\n'
        ++line;
        record_done = true;
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

bool needs_csv_quotes(std::string_view field) {
  return field.find_first_of(",\"\r\n\t") != std::string_view::npos;
}

void append_csv_field(std::string& out, std::string_view field) {
  if (!needs_csv_quotes(field)) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

void append_tsv_field(std::string& out, std::string_view field,
                      std::string_view id, std::string_view column) {
  if (field.find_first_of("\t\r\n") != std::string_view::npos) {
    throw ValidationError(fmt::format(
        "example '{}': {} contains a tab or line break and cannot be "
        "written as TSV (use CSV)",
        id, column));
  }
  out.append(field);
}

void check_sorted_unique(const std::vector<std::string>& labels) {
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (!(labels[i - 1] < labels[i])) {
      throw ValidationError(
          "label space must be sorted and free of duplicates (at '" +
          labels[i] + "')");
    }
  }
}

void validate_examples(const std::vector<LabeledExample>& examples,
                       const std::vector<std::string>& label_space) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(examples.size());
  for (const auto& ex : examples) {
    if (ex.id.empty()) throw ValidationError("example with empty id");
    if (!seen.insert(ex.id).second) {
      throw ValidationError("duplicate id '" + ex.id + "'");
    }
    if (ex.label) {
      if (ex.label->empty()) {
        throw ValidationError("example '" + ex.id + "' has an empty label");
      }
      if (!std::binary_search(label_space.begin(), label_space.end(),
                              *ex.label)) {
        throw ValidationError("example '" + ex.id + "' has label '" +
                              *ex.label + "' outside the label space");
      }
    }
  }
}

template <typename Fn>
auto with_path_context(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const EncodingError& e) {
    throw EncodingError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace

TableFormat parse_table_format(std::string_view name) {
  if (name == "tsv") return TableFormat::kTsv;
  if (name == "csv") return TableFormat::kCsv;
  throw ValidationError("unknown table format '" + std::string(name) +
                        "' (expected tsv or csv)");
}

TableFormat format_from_extension(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? TableFormat::kCsv : TableFormat::kTsv;
}

std::vector<std::string> derive_label_space(
    const std::vector<LabeledExample>& examples) {
  std::set<std::string> labels;
  for (const auto& ex : examples) {
    if (ex.label) labels.insert(*ex.label);
  }
  return {labels.begin(), labels.end()};
}

Corpus::Corpus(std::vector<LabeledExample> examples)
    : examples_(std::move(examples)),
      label_space_(derive_label_space(examples_)) {
  validate_examples(examples_, label_space_);
}

Corpus::Corpus(std::vector<LabeledExample> examples,
               std::vector<std::string> label_space)
    : examples_(std::move(examples)), label_space_(std::move(label_space)) {
  check_sorted_unique(label_space_);
  validate_examples(examples_, label_space_);
}

bool Corpus::fully_labeled() const noexcept {
  return std::all_of(examples_.begin(), examples_.end(),
                     [](const LabeledExample& ex) { return ex.label.has_value(); });
}

std::optional<std::size_t> Corpus::class_index(std::string_view label) const {
  const auto it =
      std::lower_bound(label_space_.begin(), label_space_.end(), label);
  if (it == label_space_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - label_space_.begin());
}

std::vector<std::string> Corpus::ids() const {
  std::vector<std::string> out;
  out.reserve(examples_.size());
  for (const auto& ex : examples_) out.push_back(ex.id);
  return out;
}

Corpus parse_corpus(std::string_view text, TableFormat format) {
  if (const auto bad = utf8::find_invalid(text)) {
    throw EncodingError(fmt::format("line {}: invalid UTF-8 at byte offset {}",
                                    line_of_offset(text, *bad), *bad));
  }
  std::vector<Record> records = format == TableFormat::kTsv
                                    ? read_tsv_records(text)
                                    : read_csv_records(text);
  if (records.empty()) throw ParseError("missing header row");

  const auto& header = records.front().fields;
  const auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto id_col = column("id");
  const auto content_col = column("content");
  const auto label_col = column("label");
  if (!id_col || !content_col) {
    throw ParseError("line 1: header must name 'id' and 'content' columns");
  }

  std::vector<LabeledExample> examples;
  examples.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw ParseError(fmt::format("line {}: expected {} columns, found {}",
                                   rec.line, header.size(), rec.fields.size()));
    }
    LabeledExample ex;
    ex.id = std::move(rec.fields[*id_col]);
    ex.content = std::move(rec.fields[*content_col]);
    if (label_col && !rec.fields[*label_col].empty()) {
      ex.label = std::move(rec.fields[*label_col]);
    }
    if (ex.id.empty()) {
      throw ValidationError(fmt::format("line {}: empty id", rec.line));
    }
    examples.push_back(std::move(ex));
  }
  return Corpus(std::move(examples));
}

Corpus load_corpus(const std::filesystem::path& path, TableFormat format) {
  const std::string text = io::read_file(path);
  return with_path_context(path, [&] { return parse_corpus(text, format); });
}

Corpus load_corpus(const std::filesystem::path& path) {
  return load_corpus(path, format_from_extension(path));
}

std::string format_corpus(const Corpus& corpus, TableFormat format) {
  const bool with_label = std::any_of(
      corpus.examples().begin(), corpus.examples().end(),
      [](const LabeledExample& ex) { return ex.label.has_value(); });
  const char sep = format == TableFormat::kTsv ? '\t' : ',';
  std::string out = with_label ? "id,content,label" : "id,content";
  if (format == TableFormat::kTsv) std::replace(out.begin(), out.end(), ',', '\t');
  out.push_back('\n');
  for (const auto& ex : corpus.examples()) {
    const std::string_view label = ex.label ? std::string_view(*ex.label) : "";
    if (format == TableFormat::kTsv) {
      append_tsv_field(out, ex.id, ex.id, "id");
      out.push_back(sep);
      append_tsv_field(out, ex.content, ex.id, "content");
      if (with_label) {
        out.push_back(sep);
        append_tsv_field(out, label, ex.id, "label");
      }
    } else {
      append_csv_field(out, ex.id);
      out.push_back(sep);
      append_csv_field(out, ex.content);
      if (with_label) {
        out.push_back(sep);
        append_csv_field(out, label);
      }
    }
    out.push_back('\n');
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path,
                 TableFormat format) {
  io::write_file_atomic(path, format_corpus(corpus, format));
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  save_corpus(corpus, path, format_from_extension(path));
}

Corpus concatenate(const std::vector<Corpus>& parts) {
  std::vector<LabeledExample> all;
  for (const auto& part : parts) {
    all.insert(all.end(), part.examples().begin(), part.examples().end());
  }
  return Corpus(std::move(all));
}

void SplitSpec::validate() const {
  for (double f : {train_fraction, dev_fraction, test_fraction}) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw ValidationError(fmt::format("split fraction {} outside [0, 1]", f));
    }
  }
  const double sum = train_fraction + dev_fraction + test_fraction;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError(
        fmt::format("split fractions sum to {:.12g}, expected 1", sum));
  }
}

double parse_fraction(std::string_view text) {
  const auto parse_double = [&](std::string_view s) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw ParseError("invalid fraction '" + std::string(text) + "'");
    }
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_double(text);
  const double num = parse_double(text.substr(0, slash));
  const double den = parse_double(text.substr(slash + 1));
  if (den == 0.0) {
    throw ParseError("invalid fraction '" + std::string(text) + "'");
  }
  return num / den;
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  spec.validate();
  const auto rounded = [&](double f) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n) * f));
  };
  const std::size_t train = rounded(spec.train_fraction);
  const std::size_t dev = rounded(spec.dev_fraction);
  if (train + dev > n) {
    throw ValidationError("degenerate split: rounded sizes exceed corpus size");
  }
  SplitSizes sizes{train, dev, n - train - dev};
  std::vector<std::string> empty;
  if (sizes.train == 0) empty.emplace_back("train");
  if (sizes.dev == 0) empty.emplace_back("dev");
  if (sizes.test == 0) empty.emplace_back("test");
  if (!empty.empty()) {
    throw ValidationError(fmt::format("degenerate split: {} empty for N={}",
                                      fmt::join(empty, " and "), n));
  }
  return sizes;
}

std::tuple<Corpus, Corpus, Corpus> split_corpus(const Corpus& corpus,
                                                const SplitSpec& spec) {
  if (corpus.empty()) throw ValidationError("cannot split an empty corpus");
  const SplitSizes sizes = split_sizes(corpus.size(), spec);

  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  DeterministicRng rng(spec.seed);
  rng.shuffle(std::span<std::size_t>(order));

  const auto take = [&](std::size_t begin, std::size_t count) {
    std::vector<std::size_t> picked(order.begin() + begin,
                                    order.begin() + begin + count);
    std::sort(picked.begin(), picked.end());
    std::vector<LabeledExample> examples;
    examples.reserve(count);
    for (std::size_t i : picked) examples.push_back(corpus.examples()[i]);
    return Corpus(std::move(examples), corpus.label_space());
  };
  return {take(0, sizes.train), take(sizes.train, sizes.dev),
          take(sizes.train + sizes.dev, sizes.test)};
}

}  // namespace dialectid
