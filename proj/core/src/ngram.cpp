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

#include "dialectid/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include <fmt/format.h>

#include "dialectid/error.hpp"
#include "dialectid/utf8.hpp"

namespace dialectid {
namespace {

void check_ngram_range(int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) {
    throw ValidationError(
        fmt::format("invalid n-gram range [{}, {}]", n_min, n_max));
  }
}

// Calls fn(string_view) for each character n-gram; views alias `text`.
template <typename Fn>
void for_each_ngram(std::string_view text, int n_min, int n_max, Fn&& fn) {
  const auto chars = utf8::code_points(text);
  const std::size_t count = chars.size();
  for (std::size_t start = 0; start < count; ++start) {
    const char* begin = chars[start].data();
    for (int n = n_min; n <= n_max; ++n) {
      const std::size_t last = start + static_cast<std::size_t>(n) - 1;
      if (last >= count) break;
      const char* end = chars[last].data() + chars[last].size();
      fn(std::string_view(begin, static_cast<std::size_t>(end - begin)));
    }
  }
}

}  // namespace

double FeatureVector::l2_norm() const noexcept {
  double sum = 0.0;
  for (const auto& [index, weight] : entries) sum += weight * weight;
  return std::sqrt(sum);
}

NgramVocabulary::NgramVocabulary(int n_min, int n_max,
                                 std::vector<std::string> ngrams,
                                 std::vector<std::uint64_t> document_frequency,
                                 std::uint64_t num_documents)
    : n_min_(n_min),
      n_max_(n_max),
      ngrams_(std::move(ngrams)),
      document_frequency_(std::move(document_frequency)),
      num_documents_(num_documents) {
  check_ngram_range(n_min_, n_max_);
  if (ngrams_.size() != document_frequency_.size()) {
    throw ValidationError("vocabulary and document frequencies differ in size");
  }
  idf_.reserve(ngrams_.size());
  index_.reserve(ngrams_.size());
  for (std::size_t i = 0; i < ngrams_.size(); ++i) {
    if (i > 0 && !(ngrams_[i - 1] < ngrams_[i])) {
      throw ValidationError("vocabulary n-grams must be strictly increasing");
    }
    const std::uint64_t df = document_frequency_[i];
    if (df < 1 || df > num_documents_) {
      throw ValidationError(fmt::format(
          "document frequency {} of '{}' outside [1, {}]", df, ngrams_[i],
          num_documents_));
    }
    idf_.push_back(std::log((1.0 + static_cast<double>(num_documents_)) /
                            (1.0 + static_cast<double>(df))) +
                   1.0);
    index_.emplace(ngrams_[i], static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> NgramVocabulary::index_of(
    std::string_view ngram) const {
  const auto it = index_.find(ngram);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> extract_ngrams(std::string_view text, int n_min,
                                        int n_max) {
  check_ngram_range(n_min, n_max);
  std::vector<std::string> out;
  for_each_ngram(text, n_min, n_max,
                 [&](std::string_view g) { out.emplace_back(g); });
  return out;
}

NgramVocabulary fit_vocabulary(const std::vector<std::string>& texts,
                               int n_min, int n_max,
                               std::size_t max_features) {
  check_ngram_range(n_min, n_max);
  if (max_features < 1) throw ValidationError("max_features must be >= 1");
  if (texts.empty()) {
    throw ValidationError("cannot fit a vocabulary on an empty text list");
  }

  std::unordered_map<std::string, std::uint64_t> df;
  std::unordered_set<std::string_view> seen;
  for (const auto& text : texts) {
    seen.clear();
    for_each_ngram(text, n_min, n_max, [&](std::string_view g) {
      if (seen.insert(g).second) ++df[std::string(g)];
    });
  }

  std::vector<std::pair<std::string, std::uint64_t>> ranked(df.begin(),
                                                            df.end());
  const auto by_df_then_text = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  if (ranked.size() > max_features) {
    std::nth_element(ranked.begin(),
                     ranked.begin() + static_cast<std::ptrdiff_t>(max_features),
                     ranked.end(), by_df_then_text);
    ranked.resize(max_features);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::string> ngrams;
  std::vector<std::uint64_t> frequencies;
  ngrams.reserve(ranked.size());
  frequencies.reserve(ranked.size());
  for (auto& [gram, count] : ranked) {
    ngrams.push_back(std::move(gram));
    frequencies.push_back(count);
  }
  return NgramVocabulary(n_min, n_max, std::move(ngrams),
                         std::move(frequencies), texts.size());
}

FeatureVector vectorize(std::string_view text, const NgramVocabulary& vocab) {
  std::map<std::uint32_t, double> counts;
  for_each_ngram(text, vocab.n_min(), vocab.n_max(), [&](std::string_view g) {
    if (const auto index = vocab.index_of(g)) counts[*index] += 1.0;
  });

  FeatureVector out;
  out.entries.reserve(counts.size());
  double sum_sq = 0.0;
  for (const auto& [index, tf] : counts) {
    const double weight = tf * vocab.idf(index);
    out.entries.emplace_back(index, weight);
    sum_sq += weight * weight;
  }
  if (sum_sq > 0.0) {
    const double inv_norm = 1.0 / std::sqrt(sum_sq);
    for (auto& entry : out.entries) entry.second *= inv_norm;
  }
  return out;
}

}  // namespace dialectid
