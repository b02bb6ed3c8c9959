/*
 * Copyright 2026 The likevote authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "likevote/core.hpp"

namespace likevote {

/// Machine-learning-free predictor: the most-liked party, gated by a minimum
/// total like count and a minimum share toward the top party (the party like
/// cap). Returns nullopt when the respondent is excluded by either gate.
/// Argmax ties break to the lowest party index.
inline std::optional<int> rule_predict(const PartyCountVector& v, int min_likes, double plc) {
  const int64_t total = v.total();
  if (total < min_likes) return std::nullopt;
  int64_t top = 0;
  int top_idx = 0;
  for (int i = 0; i < kNumParties; ++i) {
    if (v.counts[i] > top) {
      top = v.counts[i];
      top_idx = i;
    }
  }
  if (total <= 0) return std::nullopt;
  const double max_share = static_cast<double>(top) / static_cast<double>(total);
  if (max_share < plc) return std::nullopt;
  return top_idx;
}

/// One grid point of the accuracy surface. Cells nobody qualifies for carry
/// n_included = 0 and NaN accuracy (serialized as null).
struct GridCell {
  int min_likes = 1;
  double plc = 0.0;
  int64_t n_included = 0;
  double accuracy = std::nan("");
  double ci_95 = std::nan("");  // normal approximation to the binomial
};

/// Sweeps the (min likes, party like cap) grid. Accuracy is in-sample over
/// the included respondents; the rule has no fitted parameters.
inline std::vector<GridCell> sweep_grid(const Dataset& ds, const std::vector<int>& min_likes_list,
                                        const std::vector<double>& plc_list) {
  std::vector<PartyCountVector> counts;
  std::vector<int> gold;
  counts.reserve(ds.respondents.size());
  for (const auto& r : ds.respondents) {
    if (!r.survey.vote_intent) continue;
    const int label = ds.party_space.index_of(*r.survey.vote_intent);
    if (label < 0) continue;
    counts.push_back(post_like_counts(r, ds.party_space));
    gold.push_back(label);
  }

  std::vector<GridCell> cells;
  for (int min_likes : min_likes_list) {
    for (double plc : plc_list) {
      GridCell cell;
      cell.min_likes = min_likes;
      cell.plc = plc;
      int64_t hits = 0;
      for (size_t i = 0; i < counts.size(); ++i) {
        const auto pred = rule_predict(counts[i], min_likes, plc);
        if (!pred) continue;
        ++cell.n_included;
        if (*pred == gold[i]) ++hits;
      }
      if (cell.n_included > 0) {
        cell.accuracy = static_cast<double>(hits) / static_cast<double>(cell.n_included);
        cell.ci_95 = 1.96 * std::sqrt(cell.accuracy * (1.0 - cell.accuracy) /
                                      static_cast<double>(cell.n_included));
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace likevote
