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

#include <cstdlib>

#include "dialectid/error.hpp"
#include "dialectid/predfile.hpp"
#include "dialectid/random.hpp"
#include "support/temp_dir.hpp"

using namespace dialectid;
using dialectid::testing::TempDir;

namespace {

PredictionSet probabilistic_set(std::size_t n, std::uint64_t seed) {
  DeterministicRng rng(seed);
  PredictionSet set;
  set.model_id = "marbert";
  set.label_space = {"Egypt", "Iraq", "Oman"};
  set.probabilities.emplace();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(3);
    double sum = 0.0;
    for (double& p : row) sum += (p = rng.unit() + 1e-3);
    for (double& p : row) p /= sum;
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k) if (row[k] > row[best]) best = k;
    set.entries.push_back({"t" + std::to_string(i), set.label_space[best]});
    set.probabilities->push_back(row);
  }
  return set;
}

std::vector<std::string> fixture_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("t" + std::to_string(i));
  return ids;
}

}  // namespace

TEST_SUITE("predfile") {

TEST_CASE("hard-label file round trip") {
  const PredictionSet set{"arabert", {{"1", "Egypt"}, {"2", "Iraq"}}, {}, {}};
  const std::string text = format_predictions(set);
  CHECK(text == "# model_id: arabert\nexample_id\tlabel\n1\tEgypt\n2\tIraq\n");
  CHECK(parse_predictions(text, "fallback") == set);
}

TEST_CASE("probability file round trip is exact and byte-stable") {
  const PredictionSet set = probabilistic_set(50, 4);
  TempDir dir;
  write_predictions(set, dir / "p.tsv");
  const PredictionSet back = read_predictions(dir / "p.tsv");
  CHECK(back == set);
  CHECK(format_predictions(back) == testing::slurp(dir / "p.tsv"));
  CHECK(testing::slurp(dir / "p.tsv").find("\tp_Egypt\tp_Iraq\tp_Oman\n") !=
        std::string::npos);
}

TEST_CASE("fallback model id and CRLF input") {
  const PredictionSet set =
      parse_predictions("example_id\tlabel\r\n1\tA\r\n", "from-filename");
  CHECK(set.model_id == "from-filename");
  CHECK(set.entries == std::vector<PredictionEntry>{{"1", "A"}});
}

TEST_CASE("header-only file is an empty set") {
  const PredictionSet set = parse_predictions("example_id\tlabel\n", "m");
  CHECK(set.entries.empty());
  TempDir dir;
  write_predictions(PredictionSet{"m", {}, {}, {}}, dir / "empty.tsv");
  CHECK(read_predictions(dir / "empty.tsv", {}).entries.empty());
}

TEST_CASE("malformed files are refused") {
  CHECK_THROWS_AS(parse_predictions("", "m"), ParseError);
  CHECK_THROWS_AS(parse_predictions("# model_id: x\n", "m"), ParseError);
  CHECK_THROWS_AS(parse_predictions("id\tlabel\n", "m"), ParseError);
  CHECK_THROWS_AS(parse_predictions("example_id\tlabel\tprob\n", "m"), ParseError);
  CHECK_THROWS_AS(parse_predictions("example_id\tlabel\n1\n", "m"), ParseError);
  CHECK_THROWS_AS(
      parse_predictions("example_id\tlabel\tp_A\tp_B\n1\tA\tx\t0.5\n", "m"),
      ParseError);
  CHECK_THROWS_AS(parse_predictions("example_id\tlabel\n1\t\xff\n", "m"),
                  EncodingError);
}

TEST_CASE("probability rows must be a distribution over the declared space") {
  const std::string header = "example_id\tlabel\tp_A\tp_B\n";
  CHECK_NOTHROW(parse_predictions(header + "1\tA\t0.6\t0.4\n", "m"));
  CHECK_THROWS_AS(parse_predictions(header + "1\tA\t0.6\t0.5\n", "m"),
                  ValidationError);
  CHECK_THROWS_AS(parse_predictions(header + "1\tA\t1.5\t-0.5\n", "m"),
                  ValidationError);
  CHECK_THROWS_AS(parse_predictions(header + "1\tA\tnan\t0.5\n", "m"),
                  ValidationError);
  CHECK_THROWS_AS(parse_predictions(header + "1\tC\t0.5\t0.5\n", "m"),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_predictions("example_id\tlabel\tp_A\tp_A\n1\tA\t0.5\t0.5\n", "m"),
      ValidationError);
  // Within tolerance.
  CHECK_NOTHROW(parse_predictions(header + "1\tA\t0.6000000001\t0.4\n", "m"));
}

TEST_CASE("duplicate ids are rejected") {
  CHECK_THROWS_AS(parse_predictions("example_id\tlabel\n1\tA\n1\tB\n", "m"),
                  ValidationError);
}

TEST_CASE("alignment errors name the offending row") {
  TempDir dir;
  const PredictionSet set{"m", {{"a", "X"}, {"b", "Y"}, {"c", "X"}}, {}, {}};
  write_predictions(set, dir / "p.tsv");
  CHECK_NOTHROW(read_predictions(dir / "p.tsv", {"a", "b", "c"}));

  try {
    read_predictions(dir / "p.tsv", {"a", "c", "b"});
    FAIL("expected AlignmentError");
  } catch (const AlignmentError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  CHECK_THROWS_AS(read_predictions(dir / "p.tsv", {"a", "b", "c", "d"}),
                  AlignmentError);
  CHECK_THROWS_AS(read_predictions(dir / "p.tsv", {"a", "b"}), AlignmentError);
  CHECK_THROWS_AS(check_alignment(set, {}), AlignmentError);
}

TEST_CASE("a full test-split fixture loads aligned") {
  TempDir dir;
  const PredictionSet set = probabilistic_set(3600, 9);
  write_predictions(set, dir / "marbert.tsv");
  const PredictionSet back = read_predictions(dir / "marbert.tsv", fixture_ids(3600));
  CHECK(back.entries.size() == 3600);
  CHECK(back.model_id == "marbert");
  CHECK(back == set);
}

TEST_CASE("write refuses invalid sets and unsafe fields") {
  TempDir dir;
  PredictionSet set = probabilistic_set(3, 1);
  (*set.probabilities)[1][0] += 0.5;
  CHECK_THROWS_AS(write_predictions(set, dir / "bad.tsv"), ValidationError);
  CHECK_FALSE(std::filesystem::exists(dir / "bad.tsv"));
  const PredictionSet tabbed{"m", {{"a\tb", "X"}}, {}, {}};
  CHECK_THROWS_AS(write_predictions(tabbed, dir / "bad.tsv"), ValidationError);
}

TEST_CASE("submission is one label per line") {
  const PredictionSet set{"m", {{"1", "Egypt"}, {"2", "Iraq"}}, {}, {}};
  CHECK(format_submission(set) == "Egypt\nIraq\n");
  CHECK(format_submission(PredictionSet{}).empty());
}

TEST_CASE("manifest honors SOURCE_DATE_EPOCH") {
  ::setenv("SOURCE_DATE_EPOCH", "86400", 1);
  const BackendManifest m =
      make_manifest("marbert", BackendKind::kExternal, R"({"lr":1e-05})");
  ::unsetenv("SOURCE_DATE_EPOCH");
  CHECK(m.created_at == "1970-01-02T00:00:00Z");
  CHECK(m.config_fingerprint.size() == 64);
  const std::string text = format_manifest(m);
  CHECK(text.find("\"backend_kind\": \"external\"") != std::string::npos);
  CHECK(text.find("\"created_at\": \"1970-01-02T00:00:00Z\"") != std::string::npos);
}

}  // TEST_SUITE
