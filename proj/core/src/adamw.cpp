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

#include "dialectid/adamw.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "dialectid/error.hpp"

namespace dialectid {

void adamw_step(std::span<double> params, std::span<const double> grads,
                AdamWState& state, double learning_rate,
                const AdamWOptions& options, std::size_t decay_end) {
  const std::size_t n = params.size();
  if (grads.size() != n || state.first_moment.size() != n ||
      state.second_moment.size() != n) {
    throw ValidationError(fmt::format(
        "AdamW shape mismatch: params {}, grads {}, moments {}/{}", n,
        grads.size(), state.first_moment.size(), state.second_moment.size()));
  }
  if (decay_end > n) throw ValidationError("decay_end beyond parameter count");
  if (state.step < 0) throw ValidationError("negative AdamW step count");
  if (!std::all_of(grads.begin(), grads.end(),
                   [](double g) { return std::isfinite(g); })) {
    throw ValidationError("non-finite gradient");
  }

  const double beta1 = options.beta1;
  const double beta2 = options.beta2;
  state.step += 1;
  const auto t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(beta1, t);
  const double correction2 = 1.0 - std::pow(beta2, t);

  double* m = state.first_moment.data();
  double* v = state.second_moment.data();
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    m[i] = beta1 * m[i] + (1.0 - beta1) * g;
    v[i] = beta2 * v[i] + (1.0 - beta2) * g * g;
    const double m_hat = m[i] / correction1;
    const double v_hat = v[i] / correction2;
    double update = m_hat / (std::sqrt(v_hat) + options.epsilon);
    if (i < decay_end) update += options.weight_decay * params[i];
    params[i] -= learning_rate * update;
  }
}

}  // namespace dialectid
