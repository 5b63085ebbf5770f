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
#include <string>
#include <vector>

#include "dialectid/corpus.hpp"

namespace dialectid::synth {

/// The 18 country-level labels of the shared task, sorted.
const std::vector<std::string>& country_labels();

/// Generator for desk-scale dialect corpora.
///
/// Each tweet is random Arabic-letter filler words plus its class marker
/// word, sprinkled with USER/NUM/URL placeholders. A fraction of tweets also
/// carries another class's marker, which makes them genuinely ambiguous.
struct SyntheticSpec {
  std::size_t num_classes = 18;
  std::size_t per_class = 500;
  std::size_t filler_min = 4;
  std::size_t filler_max = 9;
  double distractor_rate = 0.1;
  double noise_token_rate = 0.3;
  std::uint64_t seed = 1;
};

/// Examples are interleaved in a seeded random order with ids
/// "syn-000000", "syn-000001", ...
Corpus make_corpus(const SyntheticSpec& spec);

/// Marker word of class `k` (stable for a given class count).
std::string marker_word(std::size_t k);

}  // namespace dialectid::synth
