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

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dialectid/ngram.hpp"

namespace dialectid {

/// Multinomial logistic regression over sparse features.
///
/// Parameters live in one flat buffer: the K x D weight matrix (row-major,
/// one row per class) followed by the K biases. The optimizer sees this
/// buffer directly; `weight_count()` marks where the biases start.
class SoftmaxClassifier {
 public:
  SoftmaxClassifier() = default;
  /// Zero-initialized model.
  SoftmaxClassifier(std::vector<std::string> label_space,
                    std::size_t num_features);

  std::size_t num_classes() const noexcept { return label_space_.size(); }
  std::size_t num_features() const noexcept { return num_features_; }
  const std::vector<std::string>& label_space() const noexcept {
    return label_space_;
  }

  std::size_t weight_count() const noexcept {
    return num_classes() * num_features_;
  }
  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }

  double& weight(std::size_t k, std::size_t d) {
    return params_[k * num_features_ + d];
  }
  double weight(std::size_t k, std::size_t d) const {
    return params_[k * num_features_ + d];
  }
  double& bias(std::size_t k) { return params_[weight_count() + k]; }
  double bias(std::size_t k) const { return params_[weight_count() + k]; }

  /// W x + b.
  std::vector<double> logits(const FeatureVector& x) const;

  friend bool operator==(const SoftmaxClassifier&,
                         const SoftmaxClassifier&) = default;

 private:
  std::vector<std::string> label_space_;
  std::size_t num_features_ = 0;
  std::vector<double> params_;
};

/// Numerically stable softmax (shifts by the max logit).
std::vector<double> softmax(std::span<const double> logits);

struct LabeledVector {
  const FeatureVector* features;
  std::size_t class_index;
};

struct LossAndGradient {
  double loss = 0.0;
  /// Same layout as SoftmaxClassifier::parameters().
  std::vector<double> gradient;
};

/// Mean cross-entropy -ln softmax(Wx+b)[y] over the batch and its exact
/// gradient. Throws ValidationError on an empty batch, an out-of-range class,
/// an out-of-range feature index or a non-finite feature value.
LossAndGradient loss_and_gradient(const SoftmaxClassifier& model,
                                  std::span<const LabeledVector> batch);

struct Prediction {
  std::string label;
  std::size_t class_index = 0;
  std::vector<double> probabilities;
};

/// argmax with ties going to the lowest class index. Safe to call
/// concurrently on a shared model.
Prediction predict(const SoftmaxClassifier& model, const FeatureVector& x);

}  // namespace dialectid
