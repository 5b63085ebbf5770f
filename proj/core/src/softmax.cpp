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

#include "dialectid/softmax.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dialectid/error.hpp"

namespace dialectid {

SoftmaxClassifier::SoftmaxClassifier(std::vector<std::string> label_space,
                                     std::size_t num_features)
    : label_space_(std::move(label_space)),
      num_features_(num_features),
      params_(label_space_.size() * (num_features + 1), 0.0) {}

std::vector<double> SoftmaxClassifier::logits(const FeatureVector& x) const {
  std::vector<double> z(num_classes());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double* row = params_.data() + k * num_features_;
    double sum = bias(k);
    for (const auto& [index, value] : x.entries) sum += row[index] * value;
    z[k] = sum;
  }
  return z;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  const double max = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - max);
    total += out[k];
  }
  for (double& p : out) p /= total;
  return out;
}

LossAndGradient loss_and_gradient(const SoftmaxClassifier& model,
                                  std::span<const LabeledVector> batch) {
  if (batch.empty()) throw ValidationError("empty batch");
  const std::size_t num_classes = model.num_classes();
  const std::size_t num_features = model.num_features();

  LossAndGradient out;
  out.gradient.assign(model.parameters().size(), 0.0);
  const double scale = 1.0 / static_cast<double>(batch.size());
  double* grad_w = out.gradient.data();
  double* grad_b = out.gradient.data() + model.weight_count();

  for (const auto& item : batch) {
    if (item.class_index >= num_classes) {
      throw ValidationError(fmt::format("class index {} out of range (K={})",
                                        item.class_index, num_classes));
    }
    for (const auto& [index, value] : item.features->entries) {
      if (index >= num_features) {
        throw ValidationError(fmt::format(
            "feature index {} out of range (D={})", index, num_features));
      }
      if (!std::isfinite(value)) {
        throw ValidationError("non-finite feature value");
      }
    }

    const std::vector<double> z = model.logits(*item.features);
    const double max = *std::max_element(z.begin(), z.end());
    double sum_exp = 0.0;
    for (double zk : z) sum_exp += std::exp(zk - max);
    const double log_norm = max + std::log(sum_exp);
    out.loss += (log_norm - z[item.class_index]) * scale;

    for (std::size_t k = 0; k < num_classes; ++k) {
      double delta = std::exp(z[k] - log_norm);
      if (k == item.class_index) delta -= 1.0;
      delta *= scale;
      grad_b[k] += delta;
      double* row = grad_w + k * num_features;
      for (const auto& [index, value] : item.features->entries) {
        row[index] += delta * value;
      }
    }
  }
  return out;
}

Prediction predict(const SoftmaxClassifier& model, const FeatureVector& x) {
  const std::vector<double> z = model.logits(x);
  Prediction out;
  out.class_index = 0;
  for (std::size_t k = 1; k < z.size(); ++k) {
    if (z[k] > z[out.class_index]) out.class_index = k;
  }
  out.label = model.label_space().at(out.class_index);
  out.probabilities = softmax(z);
  return out;
}

}  // namespace dialectid
