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

#include <cmath>

#include "dialectid/error.hpp"
#include "dialectid/trainer.hpp"

using namespace dialectid;

namespace {

Corpus toy_corpus() {
  std::vector<LabeledExample> examples;
  const std::vector<std::pair<std::string, std::string>> stems{
      {"aaab", "A"}, {"ccdc", "B"}, {"eeff", "C"}};
  for (int i = 0; i < 20; ++i) {
    for (const auto& [stem, label] : stems) {
      examples.push_back({label + std::to_string(i),
                          stem + std::string(static_cast<std::size_t>(i % 3), 'z'),
                          label});
    }
  }
  return Corpus(std::move(examples));
}

NgramVocabulary vocab_for(const Corpus& corpus) {
  std::vector<std::string> texts;
  for (const auto& ex : corpus.examples()) texts.push_back(ex.content);
  return fit_vocabulary(texts, 1, 2, 1000);
}

}  // namespace

TEST_SUITE("trainer") {

TEST_CASE("config validation") {
  TrainConfig c;
  CHECK_NOTHROW(c.validate());
  c.epochs = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.batch_size = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.learning_rate = -1;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("separable toy data is learned perfectly") {
  const Corpus corpus = toy_corpus();
  const NgramVocabulary vocab = vocab_for(corpus);
  TrainConfig config;
  config.learning_rate = kBaselineLearningRate * 5;
  config.epochs = 15;
  config.batch_size = 8;
  const TrainResult result = train(corpus, vocab, config);
  CHECK(result.loss_history.size() == 15);
  CHECK(training_accuracy(result.model, vocab, corpus) == 1.0);
  CHECK(result.loss_history.back() < result.loss_history.front());
  CHECK(result.model.label_space() == corpus.label_space());
}

TEST_CASE("first epoch at the fine-tuning rate starts near ln K") {
  const Corpus corpus = toy_corpus();
  const NgramVocabulary vocab = vocab_for(corpus);
  const TrainResult result = train(corpus, vocab, TrainConfig{});
  const double ln_k = std::log(3.0);
  CHECK(std::abs(result.loss_history[0] - ln_k) < 0.1 * ln_k);
}

TEST_CASE("training is deterministic per seed") {
  const Corpus corpus = toy_corpus();
  const NgramVocabulary vocab = vocab_for(corpus);
  TrainConfig config;
  config.learning_rate = kBaselineLearningRate;
  config.epochs = 3;
  config.batch_size = 7;
  config.seed = 13;
  const TrainResult a = train(corpus, vocab, config);
  const TrainResult b = train(corpus, vocab, config);
  CHECK(a.model == b.model);
  CHECK(a.loss_history == b.loss_history);
  config.seed = 14;
  const TrainResult c = train(corpus, vocab, config);
  CHECK_FALSE(c.model == a.model);
}

TEST_CASE("unlabeled or single-class corpora are rejected") {
  const NgramVocabulary vocab = fit_vocabulary({"ab"}, 1, 1, 10);
  CHECK_THROWS_AS(train(Corpus({{"1", "a", "A"}, {"2", "b", std::nullopt}}),
                        vocab, TrainConfig{}),
                  ValidationError);
  CHECK_THROWS_AS(train(Corpus({{"1", "a", "A"}, {"2", "b", "A"}}), vocab,
                        TrainConfig{}),
                  ValidationError);
}

}  // TEST_SUITE
