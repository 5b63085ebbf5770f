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

#include "dialectid/predfile.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

#include "dialectid/error.hpp"
#include "dialectid/io.hpp"
#include "dialectid/utf8.hpp"

namespace dialectid {
namespace {

constexpr std::string_view kModelIdPrefix = "# model_id: ";
constexpr std::string_view kProbabilityPrefix = "p_";

void append_double(std::string& out, double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, ptr);
}

std::vector<std::string_view> split_tabs(std::string_view row) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = row.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(row.substr(start));
      return fields;
    }
    fields.push_back(row.substr(start, tab - start));
    start = tab + 1;
  }
}

void check_field(std::string_view field, std::string_view what) {
  if (field.empty() || field.find_first_of("\t\r\n") != std::string_view::npos) {
    throw ValidationError(fmt::format(
        "{} '{}' is empty or contains a tab or line break", what, field));
  }
}

}  // namespace

std::vector<std::string> PredictionSet::ids() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.example_id);
  return out;
}

std::vector<std::string> PredictionSet::labels() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.label);
  return out;
}

void PredictionSet::validate() const {
  std::unordered_set<std::string_view> seen;
  seen.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    check_field(e.example_id, "example id");
    check_field(e.label, "label");
    if (!seen.insert(e.example_id).second) {
      throw ValidationError(fmt::format("duplicate example id '{}' at row {}",
                                        e.example_id, i + 1));
    }
  }
  if (!probabilities) {
    if (!label_space.empty()) {
      throw ValidationError(
          "label space declared without probabilities in prediction set '" +
          model_id + "'");
    }
    return;
  }
  if (label_space.empty()) {
    throw ValidationError("probabilities require a declared label space");
  }
  std::unordered_set<std::string_view> space;
  for (const auto& label : label_space) {
    check_field(label, "label");
    if (!space.insert(label).second) {
      throw ValidationError("duplicate label '" + label + "' in label space");
    }
  }
  if (probabilities->size() != entries.size()) {
    throw ValidationError(fmt::format("{} probability rows for {} entries",
                                      probabilities->size(), entries.size()));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& row = (*probabilities)[i];
    if (row.size() != label_space.size()) {
      throw ValidationError(fmt::format(
          "row {} ('{}'): {} probabilities for {} labels", i + 1,
          entries[i].example_id, row.size(), label_space.size()));
    }
    double sum = 0.0;
    for (double p : row) {
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw ValidationError(fmt::format(
            "row {} ('{}'): probability {} outside [0, 1]", i + 1,
            entries[i].example_id, p));
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
      throw ValidationError(fmt::format(
          "row {} ('{}'): probabilities sum to {:.9g}, expected 1", i + 1,
          entries[i].example_id, sum));
    }
    if (!space.contains(entries[i].label)) {
      throw ValidationError(fmt::format(
          "row {} ('{}'): label '{}' not in the declared label space", i + 1,
          entries[i].example_id, entries[i].label));
    }
  }
}

std::string format_predictions(const PredictionSet& set) {
  std::string out;
  if (!set.model_id.empty()) {
    out.append(kModelIdPrefix).append(set.model_id).push_back('\n');
  }
  out.append("example_id\tlabel");
  if (set.probabilities) {
    for (const auto& label : set.label_space) {
      out.push_back('\t');
      out.append(kProbabilityPrefix).append(label);
    }
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    out.append(set.entries[i].example_id).push_back('\t');
    out.append(set.entries[i].label);
    if (set.probabilities) {
      for (double p : (*set.probabilities)[i]) {
        out.push_back('\t');
        append_double(out, p);
      }
    }
    out.push_back('\n');
  }
  return out;
}

PredictionSet parse_predictions(std::string_view text,
                                std::string_view fallback_model_id) {
  if (const auto bad = utf8::find_invalid(text)) {
    throw EncodingError(
        fmt::format("invalid UTF-8 at byte offset {}", *bad));
  }
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }

  PredictionSet set;
  set.model_id = std::string(fallback_model_id);
  std::size_t next = 0;
  if (next < lines.size() && lines[next].starts_with(kModelIdPrefix)) {
    set.model_id = std::string(lines[next].substr(kModelIdPrefix.size()));
    ++next;
  }
  if (next >= lines.size()) throw ParseError("missing header row");

  const std::size_t header_line = next + 1;
  const auto header = split_tabs(lines[next++]);
  if (header.size() < 2 || header[0] != "example_id" || header[1] != "label") {
    throw ParseError(fmt::format(
        "line {}: header must start with example_id<TAB>label", header_line));
  }
  for (std::size_t c = 2; c < header.size(); ++c) {
    if (!header[c].starts_with(kProbabilityPrefix) ||
        header[c].size() == kProbabilityPrefix.size()) {
      throw ParseError(fmt::format(
          "line {}: probability column '{}' must be named p_<label>",
          header_line, header[c]));
    }
    set.label_space.emplace_back(header[c].substr(kProbabilityPrefix.size()));
  }
  const bool with_probabilities = header.size() > 2;
  if (with_probabilities) set.probabilities.emplace();

  for (; next < lines.size(); ++next) {
    const std::size_t line_no = next + 1;
    const auto fields = split_tabs(lines[next]);
    if (fields.size() != header.size()) {
      throw ParseError(fmt::format("line {}: expected {} columns, found {}",
                                   line_no, header.size(), fields.size()));
    }
    set.entries.push_back({std::string(fields[0]), std::string(fields[1])});
    if (with_probabilities) {
      std::vector<double> row;
      row.reserve(fields.size() - 2);
      for (std::size_t c = 2; c < fields.size(); ++c) {
        double value = 0.0;
        const auto f = fields[c];
        const auto [ptr, ec] =
            std::from_chars(f.data(), f.data() + f.size(), value);
        if (ec != std::errc{} || ptr != f.data() + f.size() || f.empty()) {
          throw ParseError(fmt::format("line {}: bad probability '{}'",
                                       line_no, f));
        }
        row.push_back(value);
      }
      set.probabilities->push_back(std::move(row));
    }
  }
  set.validate();
  return set;
}

void write_predictions(const PredictionSet& set,
                       const std::filesystem::path& path) {
  set.validate();
  io::write_file_atomic(path, format_predictions(set));
}

PredictionSet read_predictions(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_predictions(text, path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const EncodingError& e) {
    throw EncodingError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

PredictionSet read_predictions(const std::filesystem::path& path,
                               const std::vector<std::string>& expected_ids) {
  PredictionSet set = read_predictions(path);
  try {
    check_alignment(set, expected_ids);
  } catch (const AlignmentError& e) {
    throw AlignmentError(path.string() + ": " + e.what());
  }
  return set;
}

void check_alignment(const PredictionSet& set,
                     const std::vector<std::string>& expected_ids) {
  const std::size_t common = std::min(set.entries.size(), expected_ids.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (set.entries[i].example_id != expected_ids[i]) {
      throw AlignmentError(fmt::format(
          "row {}: found id '{}', expected '{}'", i + 1,
          set.entries[i].example_id, expected_ids[i]));
    }
  }
  if (set.entries.size() < expected_ids.size()) {
    throw AlignmentError(fmt::format("row {}: missing id '{}' ({} of {} rows)",
                                     common + 1, expected_ids[common],
                                     set.entries.size(), expected_ids.size()));
  }
  if (set.entries.size() > expected_ids.size()) {
    throw AlignmentError(fmt::format("row {}: extra id '{}' ({} rows, {} expected)",
                                     common + 1, set.entries[common].example_id,
                                     set.entries.size(), expected_ids.size()));
  }
}

std::string format_submission(const PredictionSet& set) {
  std::string out;
  for (const auto& e : set.entries) out.append(e.label).push_back('\n');
  return out;
}

void write_submission(const PredictionSet& set,
                      const std::filesystem::path& path) {
  io::write_file_atomic(path, format_submission(set));
}

std::string_view to_string(BackendKind kind) {
  return kind == BackendKind::kNativeBaseline ? "native-baseline" : "external";
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    const std::string_view s(epoch);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc{} && ptr == s.data() + s.size()) {
      now = static_cast<std::time_t>(value);
    }
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", tm.tm_year + 1900,
                     tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min,
                     tm.tm_sec);
}

BackendManifest make_manifest(std::string model_id, BackendKind kind,
                              std::string config_json) {
  BackendManifest m;
  m.model_id = std::move(model_id);
  m.backend_kind = kind;
  m.config_json = std::move(config_json);
  m.config_fingerprint = io::sha256_hex(m.config_json);
  m.created_at = utc_timestamp();
  return m;
}

std::string format_manifest(const BackendManifest& manifest) {
  nlohmann::ordered_json j;
  j["model_id"] = manifest.model_id;
  j["backend_kind"] = to_string(manifest.backend_kind);
  j["config"] = nlohmann::ordered_json::parse(manifest.config_json);
  j["config_fingerprint"] = manifest.config_fingerprint;
  j["created_at"] = manifest.created_at;
  return j.dump(2) + "\n";
}

void write_manifest(const BackendManifest& manifest,
                    const std::filesystem::path& path) {
  io::write_file_atomic(path, format_manifest(manifest));
}

}  // namespace dialectid
