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

#include "dialectid/error.hpp"
#include "dialectid/model_io.hpp"
#include "dialectid/random.hpp"
#include "support/temp_dir.hpp"

using namespace dialectid;

namespace {

BaselineModel sample_model() {
  BaselineModel m;
  m.vocabulary = NgramVocabulary(2, 3, {"ab", "bc", "مر"}, {3, 1, 2}, 4);
  m.classifier = SoftmaxClassifier({"Egypt", "Iraq"}, 3);
  DeterministicRng rng(1);
  for (double& p : m.classifier.parameters()) p = rng.unit() - 0.5;
  m.metadata_json = R"({"model_id":"m"})";
  return m;
}

}  // namespace

TEST_SUITE("model_io") {

TEST_CASE("round trip preserves every bit") {
  const BaselineModel m = sample_model();
  const std::string bytes = serialize_model(m);
  CHECK(bytes.substr(0, 8) == "DIDMODEL");
  CHECK(deserialize_model(bytes) == m);
  CHECK(serialize_model(deserialize_model(bytes)) == bytes);

  testing::TempDir dir;
  save_model(m, dir / "sub" / "m.model");
  CHECK(load_model(dir / "sub" / "m.model") == m);
}

TEST_CASE("version mismatch is a validation error") {
  std::string bytes = serialize_model(sample_model());
  bytes[8] = static_cast<char>(kModelFormatVersion + 1);
  CHECK_THROWS_AS(deserialize_model(bytes), ValidationError);
}

TEST_CASE("bad magic and truncation are parse errors") {
  std::string bytes = serialize_model(sample_model());
  std::string wrong = bytes;
  wrong[0] = 'X';
  CHECK_THROWS_AS(deserialize_model(wrong), ParseError);
  for (std::size_t n = 0; n < bytes.size(); n += 7) {
    CHECK_THROWS_AS(deserialize_model(std::string_view(bytes).substr(0, n)),
                    ParseError);
  }
  CHECK_THROWS_AS(deserialize_model(bytes + "x"), ParseError);
}

TEST_CASE("missing file is an I/O error") {
  CHECK_THROWS_AS(load_model("/nonexistent/m.model"), IoError);
}

}  // TEST_SUITE
