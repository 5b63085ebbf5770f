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

#include "commands.hpp"
#include "dialectid/corpus.hpp"
#include "dialectid/predfile.hpp"
#include "support/temp_dir.hpp"
#include "synthetic.hpp"

using namespace dialectid;
using dialectid::testing::slurp;
using dialectid::testing::TempDir;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const char* kGold =
    "id\tcontent\tlabel\n1\tx\tA\n2\ty\tA\n3\tz\tB\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and unknown subcommands") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"evaluate", "--gold", "g.tsv"}).code == 1);
}

TEST_CASE("clean reports statistics and keeps emptied rows by default") {
  TempDir dir;
  const auto in = dir.write("in.tsv",
                            "id\tcontent\tlabel\n1\tUSER NUM URL\tA\n"
                            "2\tUSER  مرحبا   URL بكم\tB\n");
  const auto r = run({"clean", "-i", in.string(), "-o", (dir / "out.tsv").string()});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "noise tokens removed: 5\n"));
  CHECK(contains(r.out, "contents emptied: 1\n"));
  CHECK(contains(r.out, "rows written: 2\n"));
  CHECK(slurp(dir / "out.tsv") == "id\tcontent\tlabel\n1\t\tA\n2\tمرحبا بكم\tB\n");

  const auto d = run({"clean", "-i", in.string(), "-o", (dir / "d.csv").string(),
                      "--drop-empty"});
  CHECK(d.code == 0);
  CHECK(contains(d.out, "rows dropped: 1\n"));
  CHECK(slurp(dir / "d.csv") == "id,content,label\n2,مرحبا بكم,B\n");

  CHECK(run({"clean", "-i", in.string(), "-o", (dir / "x.tsv").string(),
             "--drop-empty", "--keep-empty"}).code == 1);
}

TEST_CASE("clean on a missing file exits 2") {
  TempDir dir;
  const auto r = run({"clean", "-i", (dir / "missing.tsv").string(), "-o",
                      (dir / "out.tsv").string()});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "missing.tsv"));
}

TEST_CASE("split writes three files with the requested sizes") {
  TempDir dir;
  std::string text = "id\tcontent\tlabel\n";
  for (int i = 0; i < 100; ++i) text += std::to_string(i) + "\tt\t" + (i % 2 ? "A" : "B") + "\n";
  const auto in = dir.write("all.tsv", text);
  const auto r = run({"split", "-i", in.string(), "--train-out", (dir / "tr.tsv").string(),
                      "--dev-out", (dir / "dv.tsv").string(), "--test-out",
                      (dir / "te.tsv").string(), "--fractions", "0.8,0.1,0.1",
                      "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "train: 80\ndev: 10\ntest: 10\n");
  CHECK(load_corpus(dir / "te.tsv").size() == 10);
  CHECK(run({"split", "-i", in.string(), "--train-out", (dir / "a").string(),
             "--dev-out", (dir / "b").string(), "--test-out", (dir / "c").string(),
             "--fractions", "1,0,0"}).code == 1);
}

TEST_CASE("evaluate scores prediction files") {
  TempDir dir;
  const auto gold = dir.write("gold.tsv", kGold);
  const auto perfect = dir.write("p1.tsv", "example_id\tlabel\n1\tA\n2\tA\n3\tB\n");
  const auto partial = dir.write("p2.tsv", "example_id\tlabel\n1\tA\n2\tB\n3\tB\n");
  const auto shorter = dir.write("p3.tsv", "example_id\tlabel\n1\tA\n2\tA\n");

  const auto a = run({"evaluate", "--gold", gold.string(), "--pred", perfect.string()});
  CHECK(a.code == 0);
  CHECK(contains(a.out, "macro-averaged F1: 100.00\n"));

  const auto b = run({"evaluate", "--gold", gold.string(), "--pred", partial.string(),
                      "--confusion", (dir / "conf.tsv").string()});
  CHECK(b.code == 0);
  CHECK(contains(b.out, "macro-averaged F1: 66.67\n"));
  CHECK(slurp(dir / "conf.tsv") == "gold\\pred\tA\tB\nA\t1\t1\nB\t0\t1\n");

  const auto c = run({"evaluate", "--gold", gold.string(), "--pred", shorter.string()});
  CHECK(c.code == 1);
  CHECK(contains(c.err, "row 3"));

  const auto j = run({"evaluate", "--gold", gold.string(), "--pred", partial.string(),
                      "--format", "json", "--average", "weighted"});
  CHECK(j.code == 0);
  CHECK(contains(j.out, "\"weighted_f1\""));
}

TEST_CASE("train, predict, ensemble and report chain together") {
  TempDir dir;
  synth::SyntheticSpec spec;
  spec.num_classes = 3;
  spec.per_class = 40;
  spec.seed = 5;
  const Corpus all = synth::make_corpus(spec);
  save_corpus(all, dir / "all.tsv");
  REQUIRE(run({"split", "-i", (dir / "all.tsv").string(), "--train-out",
               (dir / "train.tsv").string(), "--dev-out", (dir / "dev.tsv").string(),
               "--test-out", (dir / "test.tsv").string()}).code == 0);

  std::vector<std::string> preds;
  for (const std::string id : {"m1", "m2", "m3"}) {
    const auto model = (dir / (id + ".model")).string();
    const auto t = run({"train-baseline", "--train", (dir / "train.tsv").string(),
                        "--model", model, "--model-id", id, "--epochs", "3",
                        "--max-features", "2000", "--seed", id.substr(1)});
    REQUIRE(t.code == 0);
    CHECK(contains(t.out, "epoch   1  loss"));
    CHECK(std::filesystem::exists(model + ".manifest.json"));
    const auto pred = (dir / (id + ".tsv")).string();
    REQUIRE(run({"predict", "--model", model, "-i", (dir / "test.tsv").string(),
                 "-o", pred}).code == 0);
    const PredictionSet set = read_predictions(pred);
    CHECK(set.model_id == id);
    CHECK(set.has_probabilities());
    preds.push_back(pred);
  }

  const auto ens = (dir / "ens.tsv").string();
  const auto e = run({"ensemble", "--pred", preds[0], "--pred", preds[1], "--pred",
                      preds[2], "--priority", "m2,m1,m3", "-o", ens, "--agreement",
                      (dir / "agree").string(), "--submission",
                      (dir / "sub.txt").string()});
  REQUIRE(e.code == 0);
  CHECK(read_predictions(ens).entries.size() == load_corpus(dir / "test.tsv").size());
  CHECK(std::filesystem::exists(dir / "agree.tsv"));
  const std::string submission = slurp(dir / "sub.txt");
  CHECK(std::count(submission.begin(), submission.end(), '\n') ==
        static_cast<long>(load_corpus(dir / "test.tsv").size()));

  const auto r = run({"report", "--gold", (dir / "test.tsv").string(), "--pred",
                      preds[0], "--pred", preds[1], "--pred", preds[2],
                      "--ensemble", ens, "--format", "tsv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("model\tf1_macro\taccuracy\tensemble\n", 0) == 0);
  CHECK(contains(r.out, "\nensemble\t"));

  // Soft voting over the same files.
  CHECK(run({"ensemble", "--pred", preds[0], "--pred", preds[1], "--strategy", "soft",
             "-o", (dir / "soft.tsv").string()}).code == 0);
  // A single model cannot form an ensemble.
  CHECK(run({"ensemble", "--pred", preds[0], "-o", (dir / "one.tsv").string()}).code == 1);
}

TEST_CASE("run with fewer than two backends exits 1") {
  TempDir dir;
  dir.write("train.tsv", kGold);
  const auto config = dir.write(
      "run.json", R"({"corpus": {"train": "train.tsv"}, "backends": [{"id": "a"}]})");
  const auto r = run({"run", "-c", config.string(), "--output-dir",
                      (dir / "out").string()});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "at least 2"));
}

TEST_CASE("run mixes native and external backends through prediction files") {
  TempDir dir;
  synth::SyntheticSpec spec;
  spec.num_classes = 3;
  spec.per_class = 30;
  spec.seed = 9;
  const Corpus all = synth::make_corpus(spec);
  const auto [train, dev, test] = split_corpus(all, SplitSpec{0.6, 0.2, 0.2, 1});
  save_corpus(train, dir / "train.tsv");
  save_corpus(dev, dir / "dev.tsv");
  save_corpus(test, dir / "test.tsv");

  // External models hand over gold-label and constant prediction files.
  auto fixture = [&](const Corpus& split, const std::string& split_name,
                     const std::string& name, bool gold) {
    PredictionSet set;
    set.model_id = name;
    for (const auto& ex : split.examples()) {
      set.entries.push_back({ex.id, gold ? *ex.label : split.label_space().front()});
    }
    const auto path = dir / "ext" / split_name / (name + ".tsv");
    write_predictions(set, path);
    return path.string();
  };
  const std::string oracle_dev = fixture(dev, "dev", "oracle", true);
  const std::string oracle_test = fixture(test, "test", "oracle", true);
  const std::string const_dev = fixture(dev, "dev", "constant", false);
  const std::string const_test = fixture(test, "test", "constant", false);

  const std::string config = R"({
    "corpus": {"train": "train.tsv", "dev": "dev.tsv", "test": "test.tsv"},
    "backends": [
      {"id": "native", "ngram": {"max_features": 1000}, "train": {"epochs": 3}},
      {"id": "oracle", "kind": "external",
       "predictions": {"dev": ")" + oracle_dev + R"(", "test": ")" + oracle_test + R"("}},
      {"id": "constant", "kind": "external",
       "predictions": {"dev": ")" + const_dev + R"(", "test": ")" + const_test + R"("}}
    ]
  })";
  const auto cfg = dir.write("run.json", config);
  const auto out = dir / "out";
  const auto r = run({"run", "-c", cfg.string(), "--output-dir", out.string()});
  INFO(r.err);
  REQUIRE(r.code == 0);
  CHECK(slurp(out / "run.status") == "complete\n");

  const std::string results = slurp(out / "test" / "results.tsv");
  CHECK(contains(results, "oracle\t100.00\t100.00\tno\n"));
  CHECK(contains(results, "\nensemble\t"));
  CHECK(std::filesystem::exists(out / "test" / "predictions" / "ensemble.tsv"));
  CHECK(std::filesystem::exists(out / "test" / "submission.txt"));
  CHECK(std::filesystem::exists(out / "models" / "oracle.manifest.json"));
  CHECK(std::filesystem::exists(out / "manifest.json"));

  // Report reads the run directory back.
  const auto rep = run({"report", "--run-dir", out.string(), "--format", "tsv"});
  REQUIRE(rep.code == 0);
  CHECK(contains(rep.out, "oracle\t100.00\t100.00\tno\n"));

  // A misaligned external file fails the predict stage.
  PredictionSet broken = read_predictions(oracle_test);
  std::swap(broken.entries[0], broken.entries[1]);
  write_predictions(broken, oracle_test);
  const auto bad = run({"run", "-c", cfg.string(), "--output-dir",
                        (dir / "bad").string()});
  CHECK(bad.code == 1);
  CHECK(contains(slurp(dir / "bad" / "run.status"), "failed\n"));
}

TEST_CASE("output directory falls back to the environment") {
  TempDir dir;
  dir.write("train.tsv", kGold);
  dir.write("dev.tsv", "id\tcontent\tlabel\n4\tx\tA\n5\tz\tB\n");
  const auto cfg = dir.write(
      "run.json",
      R"({"corpus": {"train": "train.tsv", "dev": "dev.tsv"},
          "backends": [{"id": "a", "train": {"epochs": 1}}, {"id": "b", "train": {"epochs": 1}}]})");
  ::setenv(cli::kOutputDirEnv, (dir / "envout").c_str(), 1);
  const auto r = run({"run", "-c", cfg.string()});
  ::unsetenv(cli::kOutputDirEnv);
  INFO(r.err);
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir / "envout" / "run.status"));
}

}  // TEST_SUITE
