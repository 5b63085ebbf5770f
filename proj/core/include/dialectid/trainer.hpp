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

#include <cstdint>
#include <string>
#include <vector>

#include "dialectid/adamw.hpp"
#include "dialectid/corpus.hpp"
#include "dialectid/ngram.hpp"
#include "dialectid/softmax.hpp"

namespace dialectid {

/// Training schema. Defaults are the transformer fine-tuning recipe (10
/// epochs, lr 1e-5, batch 32, AdamW); see kBaselineLearningRate for the rate
/// the linear baseline actually needs.
struct TrainConfig {
  int epochs = 10;
  double learning_rate = 1e-5;
  int batch_size = 32;
  AdamWOptions optimizer{};
  std::uint64_t seed = 0;

  void validate() const;
};

/// A zero-initialized linear model barely moves at 1e-5, so the CLI's
/// default baseline profile uses this rate instead.
inline constexpr double kBaselineLearningRate = 1e-2;

struct TrainResult {
  SoftmaxClassifier model;
  /// Example-weighted mean training loss of each epoch.
  std::vector<double> loss_history;
};

/// Zero-initialized mini-batch AdamW training. Each epoch shuffles with a
/// generator seeded once from `config.seed`; the last batch may be short.
/// Deterministic for fixed inputs. Throws ValidationError for unlabeled
/// examples or fewer than two classes.
TrainResult train(const Corpus& corpus, const NgramVocabulary& vocab,
                  const TrainConfig& config);

/// Fraction of examples whose predicted label equals the gold label.
double training_accuracy(const SoftmaxClassifier& model,
                         const NgramVocabulary& vocab, const Corpus& corpus);

}  // namespace dialectid
