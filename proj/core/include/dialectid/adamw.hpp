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
#include <cstdint>
#include <span>
#include <vector>

namespace dialectid {

struct AdamWOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;
};

struct AdamWState {
  AdamWState() = default;
  explicit AdamWState(std::size_t num_params)
      : first_moment(num_params, 0.0), second_moment(num_params, 0.0) {}

  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::int64_t step = 0;
};

/// One AdamW update with decoupled weight decay:
///
///   m <- b1 m + (1 - b1) g          v <- b2 v + (1 - b2) g^2
///   m_hat = m / (1 - b1^t)          v_hat = v / (1 - b2^t)
///   p <- p - lr (m_hat / (sqrt(v_hat) + eps) + wd p)
///
/// Weight decay applies to params[0, decay_end) only; the tail (biases) is
/// updated without it. Throws ValidationError on shape mismatch or a
/// non-finite gradient, in which case nothing is modified.
void adamw_step(std::span<double> params, std::span<const double> grads,
                AdamWState& state, double learning_rate,
                const AdamWOptions& options, std::size_t decay_end);

}  // namespace dialectid
