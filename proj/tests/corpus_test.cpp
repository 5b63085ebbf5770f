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
#include <set>

#include "dialectid/corpus.hpp"
#include "dialectid/error.hpp"
#include "dialectid/random.hpp"
#include "support/temp_dir.hpp"

using namespace dialectid;
using dialectid::testing::TempDir;

namespace {

Corpus numbered_corpus(std::size_t n, std::size_t classes = 3) {
  std::vector<LabeledExample> examples;
  for (std::size_t i = 0; i < n; ++i) {
    examples.push_back({"id" + std::to_string(i), "text " + std::to_string(i),
                        std::string(1, static_cast<char>('A' + i % classes))});
  }
  return Corpus(std::move(examples));
}

std::string random_field(DeterministicRng& rng, std::size_t max_len) {
  static const std::vector<std::string> pieces{"a", "b", " ", ",", "\"", "\t",
                                               "\n", "م", "ر", "ح"};
  std::string s;
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) s += pieces[rng.below(pieces.size())];
  return s;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("five-row file derives a sorted label space") {
  TempDir dir;
  const auto path = dir.write("five.tsv",
                              "id\tcontent\tlabel\n"
                              "1\tx\tB\n2\ty\tA\n3\tz\tA\n4\tw\tC\n5\tv\tB\n");
  const Corpus c = load_corpus(path, TableFormat::kTsv);
  CHECK(c.size() == 5);
  CHECK(c.label_space() == std::vector<std::string>{"A", "B", "C"});
  CHECK(c.examples()[0].id == "1");
  CHECK(c.examples()[3].label == "C");
  CHECK(c.class_index("B") == 1u);
  CHECK_FALSE(c.class_index("D").has_value());
}

TEST_CASE("header-only file is an empty corpus") {
  TempDir dir;
  const Corpus c = load_corpus(dir.write("h.tsv", "id\tcontent\tlabel\n"));
  CHECK(c.empty());
  CHECK(c.label_space().empty());
}

TEST_CASE("label column is optional and empty cells mean unlabeled") {
  const Corpus unlabeled = parse_corpus("id\tcontent\na\thello\n", TableFormat::kTsv);
  CHECK_FALSE(unlabeled.examples()[0].label.has_value());
  CHECK_FALSE(unlabeled.fully_labeled());

  const Corpus mixed =
      parse_corpus("content\tlabel\tid\nx\t\ta\ny\tEgypt\tb\n", TableFormat::kTsv);
  CHECK(mixed.examples()[0].id == "a");
  CHECK_FALSE(mixed.examples()[0].label.has_value());
  CHECK(mixed.examples()[1].label == "Egypt");
  CHECK(mixed.label_space() == std::vector<std::string>{"Egypt"});
}

TEST_CASE("malformed rows report their line number") {
  try {
    parse_corpus("id\tcontent\tlabel\n1\ta\tA\n2\tb\n", TableFormat::kTsv);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_corpus("", TableFormat::kTsv), ParseError);
  CHECK_THROWS_AS(parse_corpus("idx\tcontent\n", TableFormat::kTsv), ParseError);
}

TEST_CASE("duplicate ids are a validation error") {
  CHECK_THROWS_AS(parse_corpus("id\tcontent\n1\ta\n1\tb\n", TableFormat::kTsv),
                  ValidationError);
}

TEST_CASE("non-UTF-8 bytes are an encoding error") {
  TempDir dir;
  const auto path = dir.write("bad.tsv", "id\tcontent\n1\tab\xff\n");
  try {
    load_corpus(path);
    FAIL("expected EncodingError");
  } catch (const EncodingError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find(path.string()) != std::string::npos);
  }
  // Overlong encoding of '/' and a lone surrogate.
  CHECK_THROWS_AS(parse_corpus("id\tcontent\n1\t\xc0\xaf\n", TableFormat::kTsv),
                  EncodingError);
  CHECK_THROWS_AS(parse_corpus("id\tcontent\n1\t\xed\xa0\x80\n", TableFormat::kTsv),
                  EncodingError);
}

TEST_CASE("missing file is an I/O error naming the path") {
  try {
    load_corpus("/nonexistent/dir/corpus.tsv");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/corpus.tsv") !=
          std::string::npos);
  }
}

TEST_CASE("CRLF line endings are accepted") {
  const Corpus c = parse_corpus("id\tcontent\r\n1\ta\r\n", TableFormat::kTsv);
  CHECK(c.examples()[0].content == "a");
}

TEST_CASE("CSV quoting round-trips embedded tabs, commas, quotes and newlines") {
  const Corpus c({{"q1", "tab\there, comma \"quoted\"\nnext line", "A"},
                  {"q2", "plain", std::nullopt}});
  const std::string text = format_corpus(c, TableFormat::kCsv);
  CHECK(text ==
        "id,content,label\n"
        "q1,\"tab\there, comma \"\"quoted\"\"\nnext line\",A\n"
        "q2,plain,\n");
  CHECK(parse_corpus(text, TableFormat::kCsv) == c);
}

TEST_CASE("TSV refuses content that cannot be represented") {
  const Corpus c({{"t", "a\tb", "A"}});
  CHECK_THROWS_AS(format_corpus(c, TableFormat::kTsv), ValidationError);
}

TEST_CASE("empty corpus saves as a header-only file") {
  TempDir dir;
  save_corpus(Corpus{}, dir / "empty.tsv");
  CHECK(testing::slurp(dir / "empty.tsv") == "id\tcontent\n");
}

TEST_CASE("save/load round trip is lossless and byte-stable") {
  DeterministicRng rng(42);
  TempDir dir;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LabeledExample> examples;
    const std::size_t n = rng.below(20);
    for (std::size_t i = 0; i < n; ++i) {
      LabeledExample ex;
      ex.id = "e" + std::to_string(i);
      ex.content = random_field(rng, 12);
      if (rng.below(3) != 0) ex.label = std::string(1, static_cast<char>('A' + rng.below(4)));
      examples.push_back(std::move(ex));
    }
    const Corpus original(std::move(examples));
    const auto path = dir / "rt.csv";
    save_corpus(original, path);
    const Corpus loaded = load_corpus(path);
    CHECK(loaded == original);
    const std::string first = testing::slurp(path);
    save_corpus(loaded, path);
    CHECK(testing::slurp(path) == first);
  }
}

TEST_CASE("label space is invariant under example reordering") {
  DeterministicRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Corpus c = numbered_corpus(1 + rng.below(40), 1 + rng.below(6));
    std::vector<LabeledExample> shuffled = c.examples();
    rng.shuffle(std::span<LabeledExample>(shuffled));
    CHECK(Corpus(shuffled).label_space() == c.label_space());
  }
}

TEST_CASE("constructor rejects labels outside an explicit label space") {
  CHECK_THROWS_AS(Corpus({{"a", "x", "Z"}}, {"A", "B"}), ValidationError);
  CHECK_THROWS_AS(Corpus({}, {"B", "A"}), ValidationError);
  CHECK_THROWS_AS(Corpus({{"", "x", std::nullopt}}), ValidationError);
}

TEST_CASE("concatenate keeps order and rejects id collisions") {
  const Corpus a({{"1", "x", "A"}});
  const Corpus b({{"2", "y", "B"}});
  const Corpus ab = concatenate({a, b});
  CHECK(ab.ids() == std::vector<std::string>{"1", "2"});
  CHECK(ab.label_space() == std::vector<std::string>{"A", "B"});
  CHECK_THROWS_AS(concatenate({a, a}), ValidationError);
}

TEST_CASE("fractions parse as decimals or ratios") {
  CHECK(parse_fraction("0.25") == 0.25);
  CHECK(parse_fraction("10/13") == doctest::Approx(10.0 / 13.0).epsilon(1e-15));
  CHECK_THROWS_AS(parse_fraction("1/0"), ParseError);
  CHECK_THROWS_AS(parse_fraction("abc"), ParseError);
}

TEST_CASE("split spec validation") {
  CHECK_NOTHROW((SplitSpec{0.8, 0.1, 0.1, 0}.validate()));
  CHECK_THROWS_AS((SplitSpec{0.7692, 0.0769, 0.1538, 0}.validate()), ValidationError);
  CHECK_THROWS_AS((SplitSpec{1.2, -0.1, -0.1, 0}.validate()), ValidationError);
}

TEST_CASE("split sizes reproduce the 23400-tweet table") {
  const SplitSpec spec{10.0 / 13, 1.0 / 13, 2.0 / 13, 0};
  const SplitSizes s = split_sizes(23400, spec);
  CHECK(s.train == 18000);
  CHECK(s.dev == 1800);
  CHECK(s.test == 3600);
}

TEST_CASE("N=100 with (0.8, 0.1, 0.1) is (80, 10, 10) and repeatable") {
  const Corpus c = numbered_corpus(100);
  const SplitSpec spec{0.8, 0.1, 0.1, 7};
  const auto [train, dev, test] = split_corpus(c, spec);
  CHECK(train.size() == 80);
  CHECK(dev.size() == 10);
  CHECK(test.size() == 10);
  const auto [train2, dev2, test2] = split_corpus(c, spec);
  CHECK(train2 == train);
  CHECK(dev2 == dev);
  CHECK(test2 == test);
  const auto [train3, dev3, test3] = split_corpus(c, SplitSpec{0.8, 0.1, 0.1, 8});
  CHECK(train3 != train);
}

TEST_CASE("degenerate splits are rejected") {
  const Corpus c = numbered_corpus(10);
  try {
    split_corpus(c, SplitSpec{1.0, 0.0, 0.0, 0});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("dev and test") != std::string::npos);
  }
  CHECK_THROWS_AS(split_corpus(Corpus{}, SplitSpec{}), ValidationError);
}

TEST_CASE("splits partition the corpus and inherit its label space") {
  DeterministicRng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 10 + rng.below(200);
    const Corpus c = numbered_corpus(n, 2 + rng.below(5));
    const auto [train, dev, test] = split_corpus(c, SplitSpec{0.6, 0.2, 0.2, rng.below(1000)});
    std::multiset<std::string> ids;
    for (const Corpus* part : {&train, &dev, &test}) {
      CHECK(part->label_space() == c.label_space());
      for (const auto& id : part->ids()) ids.insert(id);
      // Original relative order is kept within each split.
      const auto pid = part->ids();
      CHECK(std::is_sorted(pid.begin(), pid.end(), [](const auto& a, const auto& b) {
        return std::stoul(a.substr(2)) < std::stoul(b.substr(2));
      }));
    }
    const auto all = c.ids();
    CHECK(ids == std::multiset<std::string>(all.begin(), all.end()));
    CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == n);
  }
}

}  // TEST_SUITE
