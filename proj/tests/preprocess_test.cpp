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

#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "dialectid/error.hpp"
#include "dialectid/preprocess.hpp"
#include "dialectid/random.hpp"

using namespace dialectid;

namespace {

std::vector<std::string> whitespace_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string random_tweet(DeterministicRng& rng) {
  static const std::vector<std::string> pieces{
      "USER", "NUM", "URL", "URLS", "user", "مرحبا", "بكم", "😀", "!", "a,b",
      "XUSER", "NUM1", "كيفك", "wallah"};
  static const std::vector<std::string> spaces{" ", "  ", "\t", "\n", " \t "};
  std::string s;
  if (rng.below(3) == 0) s += spaces[rng.below(spaces.size())];
  const std::size_t n = rng.below(12);
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += spaces[rng.below(spaces.size())];
    s += pieces[rng.below(pieces.size())];
  }
  if (rng.below(3) == 0) s += spaces[rng.below(spaces.size())];
  return s;
}

}  // namespace

TEST_SUITE("preprocess") {

TEST_CASE("all-noise text cleans to empty") {
  CHECK(clean_text("USER NUM URL", CleaningConfig{}) == "");
}

TEST_CASE("clean Arabic text is unchanged") {
  CHECK(clean_text("مرحبا", CleaningConfig{}) == "مرحبا");
}

TEST_CASE("tokens are deleted and whitespace collapsed") {
  std::size_t removed = 0;
  CHECK(clean_text("USER  مرحبا   URL بكم", CleaningConfig{}, &removed) ==
        "مرحبا بكم");
  CHECK(removed == 2);
}

TEST_CASE("matching is whole-token and case-sensitive") {
  CHECK(clean_text("URLS user NUM1 XUSER", CleaningConfig{}) ==
        "URLS user NUM1 XUSER");
  CHECK(clean_text("@USER URL.", CleaningConfig{}) == "@USER URL.");
}

TEST_CASE("whitespace flags") {
  CleaningConfig keep;
  keep.collapse_whitespace = false;
  keep.trim = false;
  CHECK(clean_text(" a  USER\tb ", keep) == " a  \tb ");

  CleaningConfig collapse_only;
  collapse_only.trim = false;
  CHECK(clean_text("  a \t USER b  ", collapse_only) == " a b ");

  CleaningConfig trim_only;
  trim_only.collapse_whitespace = false;
  CHECK(clean_text("  a\t\tb URL  ", trim_only) == "a\t\tb");
}

TEST_CASE("custom noise tokens") {
  CleaningConfig config;
  config.noise_tokens = {"<LF>", "RT"};
  CHECK(clean_text("RT USER hi <LF>", config) == "USER hi");
}

TEST_CASE("config validation") {
  CleaningConfig config;
  config.noise_tokens = {""};
  CHECK_THROWS_AS(config.validate(), ValidationError);
  config.noise_tokens = {"A B"};
  CHECK_THROWS_AS(config.validate(), ValidationError);
}

TEST_CASE("idempotence, no surviving noise and order preservation") {
  DeterministicRng rng(2024);
  const std::vector<CleaningConfig> configs = [] {
    std::vector<CleaningConfig> out;
    for (int flags = 0; flags < 4; ++flags) {
      CleaningConfig c;
      c.collapse_whitespace = flags & 1;
      c.trim = flags & 2;
      out.push_back(c);
    }
    return out;
  }();
  for (int i = 0; i < 1000; ++i) {
    const std::string text = random_tweet(rng);
    for (const auto& config : configs) {
      const std::string once = clean_text(text, config);
      CHECK(clean_text(once, config) == once);
      const auto tokens = whitespace_tokens(once);
      for (const auto& t : tokens) {
        CHECK(std::find(config.noise_tokens.begin(), config.noise_tokens.end(),
                        t) == config.noise_tokens.end());
      }
      std::vector<std::string> expected;
      for (const auto& t : whitespace_tokens(text)) {
        if (std::find(config.noise_tokens.begin(), config.noise_tokens.end(),
                      t) == config.noise_tokens.end()) {
          expected.push_back(t);
        }
      }
      CHECK(tokens == expected);
    }
  }
}

TEST_CASE("clean_corpus maps contents and keeps ids, labels and order") {
  CHECK(clean_corpus(Corpus{}, CleaningConfig{}).empty());

  const Corpus all_url({{"1", "URL", "A"}, {"2", "URL", "B"}, {"3", "", "A"}});
  CleaningStats stats;
  const Corpus cleaned = clean_corpus(all_url, CleaningConfig{}, &stats);
  CHECK(cleaned.ids() == all_url.ids());
  CHECK(cleaned.label_space() == all_url.label_space());
  for (const auto& ex : cleaned.examples()) CHECK(ex.content.empty());
  CHECK(cleaned.examples()[1].label == "B");
  CHECK(stats.examples == 3);
  CHECK(stats.tokens_removed == 2);
  CHECK(stats.emptied == 2);
  CHECK(stats.dropped == 0);

  const Corpus dropped = clean_corpus(all_url, CleaningConfig{}, &stats, true);
  CHECK(dropped.empty());
  CHECK(stats.dropped == 3);
  CHECK(dropped.label_space() == all_url.label_space());
}

TEST_CASE("cleaned synthetic corpus has no noise tokens") {
  DeterministicRng rng(99);
  std::vector<LabeledExample> examples;
  for (int i = 0; i < 1000; ++i) {
    examples.push_back({std::to_string(i), random_tweet(rng), "A"});
  }
  const Corpus cleaned = clean_corpus(Corpus(examples), CleaningConfig{});
  for (const auto& ex : cleaned.examples()) {
    for (const auto& t : whitespace_tokens(ex.content)) {
      CHECK((t != "USER" && t != "NUM" && t != "URL"));
    }
  }
}

}  // TEST_SUITE
