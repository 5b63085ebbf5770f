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

#include "dialectid/preprocess.hpp"

#include <algorithm>

#include "dialectid/error.hpp"
#include "dialectid/utf8.hpp"

namespace dialectid {

void CleaningConfig::validate() const {
  for (const auto& token : noise_tokens) {
    if (token.empty()) throw ValidationError("empty noise token");
    if (std::any_of(token.begin(), token.end(), utf8::is_space)) {
      throw ValidationError("noise token '" + token +
                            "' contains whitespace");
    }
  }
}

std::string clean_text(std::string_view text, const CleaningConfig& config,
                       std::size_t* removed) {
  const auto is_noise = [&](std::string_view token) {
    return std::find(config.noise_tokens.begin(), config.noise_tokens.end(),
                     token) != config.noise_tokens.end();
  };

  // Walk alternating whitespace runs and tokens. Whitespace is buffered so
  // that the runs on either side of a deleted token merge into one.
  std::string out;
  out.reserve(text.size());
  std::string pending_space;
  bool wrote_token = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (utf8::is_space(text[i])) {
      const std::size_t start = i;
      while (i < text.size() && utf8::is_space(text[i])) ++i;
      pending_space.append(text.substr(start, i - start));
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !utf8::is_space(text[i])) ++i;
    const std::string_view token = text.substr(start, i - start);
    if (is_noise(token)) {
      if (removed) ++*removed;
      continue;
    }
    if (!pending_space.empty() && !(config.trim && !wrote_token)) {
      if (config.collapse_whitespace) {
        out.push_back(' ');
      } else {
        out.append(pending_space);
      }
    }
    pending_space.clear();
    out.append(token);
    wrote_token = true;
  }
  if (!pending_space.empty() && !config.trim) {
    if (config.collapse_whitespace) {
      out.push_back(' ');
    } else {
      out.append(pending_space);
    }
  }
  return out;
}

Corpus clean_corpus(const Corpus& corpus, const CleaningConfig& config,
                    CleaningStats* stats, bool drop_empty) {
  config.validate();
  CleaningStats local;
  std::vector<LabeledExample> examples;
  examples.reserve(corpus.size());
  for (const auto& ex : corpus.examples()) {
    ++local.examples;
    LabeledExample cleaned = ex;
    cleaned.content = clean_text(ex.content, config, &local.tokens_removed);
    if (cleaned.content.empty() && !ex.content.empty()) ++local.emptied;
    if (drop_empty && cleaned.content.empty()) {
      ++local.dropped;
      continue;
    }
    examples.push_back(std::move(cleaned));
  }
  if (stats) *stats = local;
  return Corpus(std::move(examples), corpus.label_space());
}

}  // namespace dialectid
