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
#include <string>
#include <string_view>
#include <vector>

#include "dialectid/corpus.hpp"

namespace dialectid {

/// Placeholder-token removal rules.
struct CleaningConfig {
  std::vector<std::string> noise_tokens{"USER", "NUM", "URL"};
  bool collapse_whitespace = true;
  bool trim = true;

  /// Throws ValidationError for empty tokens or tokens containing whitespace.
  void validate() const;
};

struct CleaningStats {
  std::size_t examples = 0;
  std::size_t tokens_removed = 0;
  /// Examples whose content became empty and was not empty before.
  std::size_t emptied = 0;
  std::size_t dropped = 0;
};

/// Deletes every whitespace-delimited token that exactly equals a noise
/// token (case-sensitive; "URLS" survives). Everything else is copied
/// verbatim. `removed`, when given, is incremented per deleted token.
std::string clean_text(std::string_view text, const CleaningConfig& config,
                       std::size_t* removed = nullptr);

/// Maps clean_text over every example's content. Ids, labels, order and
/// label space are unchanged. Rows emptied by cleaning are kept unless
/// `drop_empty` is set.
Corpus clean_corpus(const Corpus& corpus, const CleaningConfig& config,
                    CleaningStats* stats = nullptr, bool drop_empty = false);

}  // namespace dialectid
