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
#include <filesystem>
#include <string>
#include <string_view>

#include "dialectid/ngram.hpp"
#include "dialectid/softmax.hpp"

namespace dialectid {

/// Everything needed to predict with the native baseline.
struct BaselineModel {
  NgramVocabulary vocabulary;
  SoftmaxClassifier classifier;
  /// Free-form JSON describing how the model was trained.
  std::string metadata_json = "{}";

  friend bool operator==(const BaselineModel&, const BaselineModel&) = default;
};

inline constexpr std::uint32_t kModelFormatVersion = 1;

/// Binary layout, all integers and floats little-endian:
///
///   "DIDMODEL"  u32 version
///   u32 len, metadata JSON bytes
///   u32 n_min, u32 n_max, u64 num_documents, u64 V,
///     V x (u32 len, n-gram bytes, u64 df)
///   u64 K, K x (u32 len, label bytes)
///   u64 D, K*D f64 weights (row-major), K f64 biases
std::string serialize_model(const BaselineModel& model);
/// Throws ParseError on truncation or bad magic, ValidationError on a
/// version mismatch or inconsistent dimensions.
BaselineModel deserialize_model(std::string_view bytes);

void save_model(const BaselineModel& model, const std::filesystem::path& path);
BaselineModel load_model(const std::filesystem::path& path);

}  // namespace dialectid
