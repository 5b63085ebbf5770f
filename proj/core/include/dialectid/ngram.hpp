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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dialectid {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

/// Sparse vector, strictly increasing by index.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const noexcept { return entries.empty(); }
  double l2_norm() const noexcept;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Character n-gram vocabulary with document frequencies.
///
/// N-grams are taken over Unicode code points, so an Arabic letter counts as
/// one character. Indices are 0..V-1 in lexicographic order of the n-gram.
class NgramVocabulary {
 public:
  NgramVocabulary() = default;

  /// Builds a vocabulary from already-selected n-grams. `ngrams` must be
  /// strictly increasing and `document_frequency` positive and parallel.
  NgramVocabulary(int n_min, int n_max, std::vector<std::string> ngrams,
                  std::vector<std::uint64_t> document_frequency,
                  std::uint64_t num_documents);

  int n_min() const noexcept { return n_min_; }
  int n_max() const noexcept { return n_max_; }
  std::size_t size() const noexcept { return ngrams_.size(); }
  std::uint64_t num_documents() const noexcept { return num_documents_; }

  const std::vector<std::string>& ngrams() const noexcept { return ngrams_; }
  const std::vector<std::uint64_t>& document_frequency() const noexcept {
    return document_frequency_;
  }
  std::optional<std::uint32_t> index_of(std::string_view ngram) const;

  /// ln((1 + N) / (1 + df)) + 1
  double idf(std::uint32_t index) const noexcept { return idf_[index]; }

  friend bool operator==(const NgramVocabulary& a, const NgramVocabulary& b) {
    return a.n_min_ == b.n_min_ && a.n_max_ == b.n_max_ &&
           a.num_documents_ == b.num_documents_ && a.ngrams_ == b.ngrams_ &&
           a.document_frequency_ == b.document_frequency_;
  }

 private:
  int n_min_ = 1;
  int n_max_ = 1;
  std::vector<std::string> ngrams_;
  std::vector<std::uint64_t> document_frequency_;
  std::vector<double> idf_;
  std::uint64_t num_documents_ = 0;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>>
      index_;
};

/// Every character n-gram of `text` with length in [n_min, n_max], in order
/// of occurrence (duplicates included).
std::vector<std::string> extract_ngrams(std::string_view text, int n_min,
                                        int n_max);

/// Keeps the `max_features` n-grams with the highest document frequency,
/// ties broken lexicographically.
NgramVocabulary fit_vocabulary(const std::vector<std::string>& texts,
                               int n_min, int n_max, std::size_t max_features);

/// Raw term counts times idf, L2-normalized. Unknown n-grams are ignored; a
/// text with no known n-gram yields the zero (empty) vector.
FeatureVector vectorize(std::string_view text, const NgramVocabulary& vocab);

}  // namespace dialectid
