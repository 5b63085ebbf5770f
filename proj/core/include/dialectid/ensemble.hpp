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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dialectid/predfile.hpp"

namespace dialectid {

enum class VoteStrategy { kHard, kSoft };
enum class TieBreak { kModelPriority, kLexicographic };

VoteStrategy parse_vote_strategy(std::string_view name);
TieBreak parse_tie_break(std::string_view name);
std::string_view to_string(VoteStrategy strategy);
std::string_view to_string(TieBreak tie_break);

struct VotePolicy {
  VoteStrategy strategy = VoteStrategy::kHard;
  TieBreak tie_break = TieBreak::kModelPriority;
  /// Required for model-priority: every participating model id exactly once,
  /// strongest model first.
  std::vector<std::string> model_priority;
};

inline constexpr std::string_view kEnsembleModelId = "ensemble";

/// Majority vote per example. Among labels tied for the most votes,
/// model-priority picks the one predicted by the earliest model in
/// `policy.model_priority`; lexicographic picks the smallest label string.
/// Throws ValidationError for fewer than two sets or a bad priority list,
/// AlignmentError when id sequences differ.
PredictionSet hard_vote(std::span<const PredictionSet> sets,
                        const VotePolicy& policy);

/// argmax of the mean probability vector, ties to the lowest class index.
/// Every set needs probabilities over the same label space.
PredictionSet soft_vote(std::span<const PredictionSet> sets,
                        const VotePolicy& policy);

/// Dispatches on policy.strategy.
PredictionSet vote(std::span<const PredictionSet> sets,
                   const VotePolicy& policy);

struct AgreementReport {
  std::vector<std::string> model_ids;
  /// agreement[i][j]: fraction of examples where models i and j agree.
  std::vector<std::vector<double>> agreement;
  /// Vote-split pattern ("3", "2+1", "1+1+1", ...) -> number of examples.
  std::map<std::string, std::size_t> vote_patterns;
  /// Shannon entropy (bits) of each example's vote distribution.
  std::vector<double> vote_entropy;
  double mean_entropy = 0.0;
};

AgreementReport agreement_report(std::span<const PredictionSet> sets);

std::string format_agreement_tsv(const AgreementReport& report);
std::string format_agreement_text(const AgreementReport& report);

}  // namespace dialectid
