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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "dialectid/corpus.hpp"
#include "dialectid/ensemble.hpp"
#include "dialectid/ngram.hpp"
#include "dialectid/random.hpp"
#include "dialectid/trainer.hpp"

using namespace dialectid;

namespace {

// Tweet-like strings over a small Arabic alphabet; class k always carries
// the same marker syllable so training has something to learn.
Corpus make_corpus(std::size_t classes, std::size_t per_class) {
  static const std::vector<std::string> letters{"ا", "ب", "ت", "ج", "ح", "د", "ر",
                                                "س", "ع", "ف", "ق", "ل", "م", "ن"};
  DeterministicRng rng(1);
  std::vector<LabeledExample> examples;
  for (std::size_t k = 0; k < classes; ++k) {
    const std::string marker = letters[k % letters.size()] + letters[(k * 5 + 3) % letters.size()] +
                               letters[(k * 7 + 1) % letters.size()];
    for (std::size_t i = 0; i < per_class; ++i) {
      std::string text;
      for (std::size_t w = 0; w < 8; ++w) {
        if (w) text += ' ';
        if (w == 3) {
          text += marker;
          continue;
        }
        for (std::size_t c = 0, n = 2 + rng.below(4); c < n; ++c) {
          text += letters[rng.below(letters.size())];
        }
      }
      examples.push_back({"b" + std::to_string(examples.size()), text,
                          "class" + std::to_string(100 + k)});
    }
  }
  return Corpus(std::move(examples));
}

std::vector<std::string> contents(const Corpus& c) {
  std::vector<std::string> out;
  for (const auto& ex : c.examples()) out.push_back(ex.content);
  return out;
}

void BM_Vectorize(benchmark::State& state) {
  const Corpus corpus = make_corpus(18, 50);
  const auto texts = contents(corpus);
  const NgramVocabulary vocab = fit_vocabulary(texts, 2, 4, 50000);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vectorize(texts[i++ % texts.size()], vocab));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Vectorize);

void BM_HardVote(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DeterministicRng rng(2);
  std::vector<PredictionSet> sets(3);
  VotePolicy policy;
  for (std::size_t m = 0; m < sets.size(); ++m) {
    sets[m].model_id = "m" + std::to_string(m);
    policy.model_priority.push_back(sets[m].model_id);
    for (std::size_t i = 0; i < n; ++i) {
      sets[m].entries.push_back({"e" + std::to_string(i), "L" + std::to_string(rng.below(18))});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(hard_vote(sets, policy));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_HardVote)->Arg(3600);

void BM_TrainEpoch(benchmark::State& state) {
  const Corpus corpus = make_corpus(18, 100);
  const NgramVocabulary vocab = fit_vocabulary(contents(corpus), 2, 4, 50000);
  TrainConfig config;
  config.epochs = 1;
  config.learning_rate = kBaselineLearningRate;
  for (auto _ : state) benchmark::DoNotOptimize(train(corpus, vocab, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
