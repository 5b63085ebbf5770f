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

#include "dialectid/trainer.hpp"

#include <numeric>

#include <fmt/format.h>

#include "dialectid/error.hpp"
#include "dialectid/random.hpp"

namespace dialectid {

void TrainConfig::validate() const {
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ValidationError("learning_rate must be > 0");
  if (batch_size < 1) throw ValidationError("batch_size must be >= 1");
  if (!(optimizer.beta1 >= 0.0 && optimizer.beta1 < 1.0) ||
      !(optimizer.beta2 >= 0.0 && optimizer.beta2 < 1.0)) {
    throw ValidationError("AdamW betas must lie in [0, 1)");
  }
  if (!(optimizer.epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (!(optimizer.weight_decay >= 0.0)) {
    throw ValidationError("weight_decay must be >= 0");
  }
}

TrainResult train(const Corpus& corpus, const NgramVocabulary& vocab,
                  const TrainConfig& config) {
  config.validate();
  if (corpus.label_space().size() < 2) {
    throw ValidationError(fmt::format(
        "training needs at least 2 classes, found {}",
        corpus.label_space().size()));
  }
  if (corpus.empty()) throw ValidationError("empty training corpus");

  std::vector<FeatureVector> features;
  std::vector<std::size_t> classes;
  features.reserve(corpus.size());
  classes.reserve(corpus.size());
  for (const auto& ex : corpus.examples()) {
    if (!ex.label) {
      throw ValidationError("training example '" + ex.id + "' is unlabeled");
    }
    features.push_back(vectorize(ex.content, vocab));
    classes.push_back(*corpus.class_index(*ex.label));
  }

  TrainResult result{SoftmaxClassifier(corpus.label_space(), vocab.size()), {}};
  SoftmaxClassifier& model = result.model;
  AdamWState state(model.parameters().size());
  DeterministicRng rng(config.seed);

  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<LabeledVector> batch;
  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  batch.reserve(batch_size);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t end = std::min(order.size(), start + batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back({&features[order[i]], classes[order[i]]});
      }
      const LossAndGradient lg = loss_and_gradient(model, batch);
      epoch_loss += lg.loss * static_cast<double>(batch.size());
      adamw_step(model.parameters(), lg.gradient, state, config.learning_rate,
                 config.optimizer, model.weight_count());
    }
    result.loss_history.push_back(epoch_loss /
                                  static_cast<double>(order.size()));
  }
  return result;
}

double training_accuracy(const SoftmaxClassifier& model,
                         const NgramVocabulary& vocab, const Corpus& corpus) {
  if (corpus.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& ex : corpus.examples()) {
    if (ex.label && predict(model, vectorize(ex.content, vocab)).label ==
                        *ex.label) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(corpus.size());
}

}  // namespace dialectid
