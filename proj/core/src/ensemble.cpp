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

#include "dialectid/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "dialectid/error.hpp"

namespace dialectid {
namespace {

void check_sets(std::span<const PredictionSet> sets, std::size_t minimum) {
  if (sets.size() < minimum) {
    throw ValidationError(fmt::format(
        "ensemble requires at least {} models, got {}", minimum, sets.size()));
  }
  std::unordered_set<std::string_view> ids;
  for (const auto& set : sets) {
    if (!ids.insert(set.model_id).second) {
      throw ValidationError("duplicate model id '" + set.model_id +
                            "' in ensemble");
    }
  }
  const std::vector<std::string> reference = sets.front().ids();
  for (std::size_t s = 1; s < sets.size(); ++s) {
    try {
      check_alignment(sets[s], reference);
    } catch (const AlignmentError& e) {
      throw AlignmentError(fmt::format("model '{}' vs '{}': {}",
                                       sets[s].model_id, sets.front().model_id,
                                       e.what()));
    }
  }
}

// Position of each set in the priority list.
std::vector<std::size_t> priority_ranks(std::span<const PredictionSet> sets,
                                        const std::vector<std::string>& priority) {
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < priority.size(); ++i) {
    if (!position.emplace(priority[i], i).second) {
      throw ValidationError("model '" + priority[i] +
                            "' listed twice in model_priority");
    }
  }
  std::vector<std::size_t> ranks;
  ranks.reserve(sets.size());
  for (const auto& set : sets) {
    const auto it = position.find(set.model_id);
    if (it == position.end()) {
      throw ValidationError("model '" + set.model_id +
                            "' missing from model_priority");
    }
    ranks.push_back(it->second);
  }
  return ranks;
}

}  // namespace

VoteStrategy parse_vote_strategy(std::string_view name) {
  if (name == "hard") return VoteStrategy::kHard;
  if (name == "soft") return VoteStrategy::kSoft;
  throw ValidationError("unknown vote strategy '" + std::string(name) +
                        "' (expected hard or soft)");
}

TieBreak parse_tie_break(std::string_view name) {
  if (name == "model-priority") return TieBreak::kModelPriority;
  if (name == "lexicographic") return TieBreak::kLexicographic;
  throw ValidationError("unknown tie break '" + std::string(name) +
                        "' (expected model-priority or lexicographic)");
}

std::string_view to_string(VoteStrategy strategy) {
  return strategy == VoteStrategy::kHard ? "hard" : "soft";
}

std::string_view to_string(TieBreak tie_break) {
  return tie_break == TieBreak::kModelPriority ? "model-priority"
                                               : "lexicographic";
}

PredictionSet hard_vote(std::span<const PredictionSet> sets,
                        const VotePolicy& policy) {
  check_sets(sets, 2);
  std::vector<std::size_t> ranks;
  if (policy.tie_break == TieBreak::kModelPriority) {
    ranks = priority_ranks(sets, policy.model_priority);
  }

  PredictionSet out;
  out.model_id = std::string(kEnsembleModelId);
  const std::size_t n = sets.front().entries.size();
  out.entries.reserve(n);

  struct Tally {
    std::string_view label;
    std::size_t votes;
    std::size_t best_rank;  // earliest priority among its voters
  };
  std::vector<Tally> tallies;
  for (std::size_t i = 0; i < n; ++i) {
    tallies.clear();
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const std::string_view label = sets[s].entries[i].label;
      const std::size_t rank = ranks.empty() ? 0 : ranks[s];
      auto it = std::find_if(tallies.begin(), tallies.end(),
                             [&](const Tally& t) { return t.label == label; });
      if (it == tallies.end()) {
        tallies.push_back({label, 1, rank});
      } else {
        ++it->votes;
        it->best_rank = std::min(it->best_rank, rank);
      }
    }
    const Tally* winner = &tallies.front();
    for (const auto& t : tallies) {
      if (t.votes != winner->votes) {
        if (t.votes > winner->votes) winner = &t;
        continue;
      }
      const bool better = policy.tie_break == TieBreak::kModelPriority
                              ? t.best_rank < winner->best_rank
                              : t.label < winner->label;
      if (better) winner = &t;
    }
    out.entries.push_back({sets.front().entries[i].example_id,
                           std::string(winner->label)});
  }
  return out;
}

PredictionSet soft_vote(std::span<const PredictionSet> sets,
                        const VotePolicy& /*policy*/) {
  check_sets(sets, 2);
  for (const auto& set : sets) {
    if (!set.has_probabilities()) {
      throw ValidationError("soft voting needs probabilities; model '" +
                            set.model_id + "' has none");
    }
    if (set.label_space != sets.front().label_space) {
      throw ValidationError("model '" + set.model_id +
                            "' declares a different label space than '" +
                            sets.front().model_id + "'");
    }
  }

  const auto& label_space = sets.front().label_space;
  const std::size_t k = label_space.size();
  const std::size_t n = sets.front().entries.size();
  PredictionSet out;
  out.model_id = std::string(kEnsembleModelId);
  out.label_space = label_space;
  out.probabilities.emplace();
  out.entries.reserve(n);
  out.probabilities->reserve(n);

  const double scale = 1.0 / static_cast<double>(sets.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> mean(k, 0.0);
    for (const auto& set : sets) {
      const auto& row = (*set.probabilities)[i];
      for (std::size_t c = 0; c < k; ++c) mean[c] += row[c];
    }
    std::size_t best = 0;
    for (std::size_t c = 0; c < k; ++c) {
      mean[c] *= scale;
      if (mean[c] > mean[best]) best = c;
    }
    out.entries.push_back({sets.front().entries[i].example_id,
                           label_space[best]});
    out.probabilities->push_back(std::move(mean));
  }
  return out;
}

PredictionSet vote(std::span<const PredictionSet> sets,
                   const VotePolicy& policy) {
  return policy.strategy == VoteStrategy::kHard ? hard_vote(sets, policy)
                                                : soft_vote(sets, policy);
}

AgreementReport agreement_report(std::span<const PredictionSet> sets) {
  check_sets(sets, 1);
  const std::size_t m = sets.size();
  const std::size_t n = sets.front().entries.size();

  AgreementReport report;
  for (const auto& set : sets) report.model_ids.push_back(set.model_id);
  report.agreement.assign(m, std::vector<double>(m, 1.0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      std::size_t same = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sets[a].entries[i].label == sets[b].entries[i].label) ++same;
      }
      const double rate =
          n == 0 ? 1.0 : static_cast<double>(same) / static_cast<double>(n);
      report.agreement[a][b] = rate;
      report.agreement[b][a] = rate;
    }
  }

  report.vote_entropy.reserve(n);
  double entropy_sum = 0.0;
  std::unordered_map<std::string_view, std::size_t> counts;
  std::vector<std::size_t> split;
  for (std::size_t i = 0; i < n; ++i) {
    counts.clear();
    for (const auto& set : sets) ++counts[set.entries[i].label];
    split.clear();
    double entropy = 0.0;
    for (const auto& [label, c] : counts) {
      split.push_back(c);
      const double p = static_cast<double>(c) / static_cast<double>(m);
      entropy -= p * std::log2(p);
    }
    std::sort(split.begin(), split.end(), std::greater<>());
    report.vote_patterns[fmt::format("{}", fmt::join(split, "+"))] += 1;
    report.vote_entropy.push_back(entropy);
    entropy_sum += entropy;
  }
  report.mean_entropy = n == 0 ? 0.0 : entropy_sum / static_cast<double>(n);
  return report;
}

std::string format_agreement_tsv(const AgreementReport& report) {
  std::string out = "kind\tkey\tvalue\n";
  const std::size_t m = report.model_ids.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      out += fmt::format("pair\t{}|{}\t{:.6f}\n", report.model_ids[a],
                         report.model_ids[b], report.agreement[a][b]);
    }
  }
  for (const auto& [pattern, count] : report.vote_patterns) {
    out += fmt::format("pattern\t{}\t{}\n", pattern, count);
  }
  out += fmt::format("mean_entropy_bits\t-\t{:.6f}\n", report.mean_entropy);
  return out;
}

std::string format_agreement_text(const AgreementReport& report) {
  const std::size_t m = report.model_ids.size();
  std::size_t width = 5;
  for (const auto& id : report.model_ids) width = std::max(width, id.size());

  std::string out = "Pairwise agreement\n";
  out += fmt::format("{:<{}}", "", width);
  for (const auto& id : report.model_ids) {
    out += fmt::format("  {:>{}}", id, width);
  }
  out += '\n';
  for (std::size_t a = 0; a < m; ++a) {
    out += fmt::format("{:<{}}", report.model_ids[a], width);
    for (std::size_t b = 0; b < m; ++b) {
      out += fmt::format("  {:>{}.4f}", report.agreement[a][b], width);
    }
    out += '\n';
  }
  out += "\nVote splits\n";
  for (const auto& [pattern, count] : report.vote_patterns) {
    out += fmt::format("  {:<12} {}\n", pattern, count);
  }
  out += fmt::format("\nMean vote entropy: {:.4f} bits\n", report.mean_entropy);
  return out;
}

}  // namespace dialectid
