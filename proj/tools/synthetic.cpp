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

#include "synthetic.hpp"

#include <fmt/format.h>

#include "dialectid/error.hpp"
#include "dialectid/random.hpp"

namespace dialectid::synth {
namespace {

// Arabic letters U+0628..U+064A minus a few, as UTF-8.
const std::vector<std::string>& letters() {
  static const std::vector<std::string> kLetters = [] {
    std::vector<std::string> out;
    for (char32_t cp = 0x0628; cp <= 0x064A; ++cp) {
      if (cp >= 0x063B && cp <= 0x0640) continue;  // unassigned + tatweel
      std::string s;
      s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
      out.push_back(s);
    }
    return out;
  }();
  return kLetters;
}

std::string random_word(DeterministicRng& rng, std::size_t length) {
  std::string word;
  for (std::size_t i = 0; i < length; ++i) {
    word += letters()[rng.below(letters().size())];
  }
  return word;
}

}  // namespace

const std::vector<std::string>& country_labels() {
  static const std::vector<std::string> kLabels{
      "Algeria", "Bahrain", "Egypt",        "Iraq",  "Jordan",  "Kuwait",
      "Lebanon", "Libya",   "Morocco",      "Oman",  "Palestine", "Qatar",
      "Saudi_Arabia", "Sudan", "Syria",     "Tunisia", "UAE",   "Yemen"};
  return kLabels;
}

std::string marker_word(std::size_t k) {
  // Two fixed letters chosen per class plus a shared prefix keeps markers
  // distinct from each other and rare in random filler.
  const auto& l = letters();
  return l[k % l.size()] + l[(k * 7 + 3) % l.size()] + l[(k * 13 + 5) % l.size()] +
         l[(k * 3 + 11) % l.size()];
}

Corpus make_corpus(const SyntheticSpec& spec) {
  if (spec.num_classes < 2 || spec.num_classes > country_labels().size()) {
    throw ValidationError(fmt::format("num_classes must be in [2, {}]",
                                      country_labels().size()));
  }
  if (spec.filler_min > spec.filler_max) {
    throw ValidationError("filler_min > filler_max");
  }
  DeterministicRng rng(spec.seed);
  static const std::vector<std::string> kNoise{"USER", "NUM", "URL"};

  std::vector<std::size_t> classes;
  for (std::size_t k = 0; k < spec.num_classes; ++k) {
    for (std::size_t i = 0; i < spec.per_class; ++i) classes.push_back(k);
  }
  rng.shuffle(std::span<std::size_t>(classes));

  std::vector<LabeledExample> examples;
  examples.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::size_t k = classes[i];
    const std::size_t fillers =
        spec.filler_min + rng.below(spec.filler_max - spec.filler_min + 1);
    std::vector<std::string> words;
    for (std::size_t w = 0; w < fillers; ++w) {
      words.push_back(random_word(rng, 2 + rng.below(4)));
    }
    const auto insert_at = [&](std::string word) {
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(
                                       rng.below(words.size() + 1)),
                   std::move(word));
    };
    insert_at(marker_word(k));
    if (rng.unit() < spec.distractor_rate) {
      const std::size_t other =
          (k + 1 + rng.below(spec.num_classes - 1)) % spec.num_classes;
      insert_at(marker_word(other));
    }
    while (rng.unit() < spec.noise_token_rate) {
      insert_at(kNoise[rng.below(kNoise.size())]);
    }
    std::string content;
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (w) content += ' ';
      content += words[w];
    }
    examples.push_back(
        {fmt::format("syn-{:06}", i), std::move(content), country_labels()[k]});
  }
  return Corpus(std::move(examples));
}

}  // namespace dialectid::synth
