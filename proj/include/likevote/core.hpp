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

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "likevote/errors.hpp"

namespace likevote {

inline constexpr const char* kVersion = "0.1.0";

/// The whole pipeline is fixed to a nine-party system.
inline constexpr int kNumParties = 9;

enum class Bloc { Left, Right };

enum class LikeKind { PostLike, CommentLike, TagMade, TagReceived };

/// Ordered universe of party identifiers plus their left/right bloc mapping.
/// Party identity is configuration, not code; synthetic runs use P1..P9.
struct PartySpace {
  std::vector<std::string> parties;  // exactly kNumParties, unique
  std::vector<Bloc> blocs;           // bloc per party, same order

  int index_of(const std::string& party) const {
    for (int i = 0; i < static_cast<int>(parties.size()); ++i)
      if (parties[i] == party) return i;
    return -1;
  }

  void validate() const {
    if (static_cast<int>(parties.size()) != kNumParties)
      throw InvalidConfigError("party space must contain exactly 9 parties");
    if (blocs.size() != parties.size())
      throw InvalidConfigError("every party needs a bloc assignment");
    std::set<std::string> seen(parties.begin(), parties.end());
    if (seen.size() != parties.size())
      throw InvalidConfigError("party identifiers must be unique");
  }
};

/// One engagement record. Events live inside their owning Respondent, sorted
/// nondecreasing by timestamp.
struct LikeEvent {
  std::string party;   // page's party, member of the PartySpace
  int64_t timestamp;   // seconds since epoch, inside the collection window
  LikeKind kind;
};

struct SurveyResponse {
  std::string gender;
  std::string age_band;
  std::string geography;
  std::string education;
  std::vector<int> opinions;               // fixed ordinal scale per schema
  std::optional<std::string> vote_intent;  // party id, or nullopt
};

struct Respondent {
  std::string respondent_id;
  SurveyResponse survey;
  std::vector<LikeEvent> like_history;  // sorted nondecreasing by timestamp
};

/// Per-party event counts in PartySpace order.
struct PartyCountVector {
  std::array<int64_t, kNumParties> counts{};

  int64_t total() const {
    int64_t t = 0;
    for (int64_t c : counts) t += c;
    return t;
  }

  /// Lowest index among maxima; -1 on the all-zero vector.
  int argmax() const {
    int best = -1;
    int64_t best_count = 0;
    for (int i = 0; i < kNumParties; ++i)
      if (counts[i] > best_count) { best_count = counts[i]; best = i; }
    return best;
  }
};

struct Dataset {
  PartySpace party_space;
  std::vector<Respondent> respondents;
  int64_t window_start = 0;  // collection window, inclusive
  int64_t window_end = 0;

  void validate() const {
    party_space.validate();
    std::set<std::string> ids;
    for (const auto& r : respondents) {
      if (!ids.insert(r.respondent_id).second)
        throw InvalidConfigError("duplicate respondent_id: " + r.respondent_id);
      int64_t prev = window_start;
      for (const auto& ev : r.like_history) {
        if (party_space.index_of(ev.party) < 0)
          throw InvalidConfigError("unknown party '" + ev.party + "' in like history of " +
                                   r.respondent_id);
        if (ev.timestamp < window_start || ev.timestamp > window_end)
          throw InvalidConfigError("like timestamp outside collection window for " +
                                   r.respondent_id);
        if (ev.timestamp < prev)
          throw InvalidConfigError("like history not sorted for " + r.respondent_id);
        prev = ev.timestamp;
      }
      if (r.survey.vote_intent && party_space.index_of(*r.survey.vote_intent) < 0)
        throw InvalidConfigError("unknown vote_intent '" + *r.survey.vote_intent + "' for " +
                                 r.respondent_id);
    }
  }
};

/// Counts events of the given kinds per party. Kinds must be nonempty.
inline PartyCountVector like_counts(const Respondent& r, const PartySpace& ps,
                                    const std::set<LikeKind>& kinds) {
  if (kinds.empty()) throw Error("like_counts: kinds must be nonempty");
  PartyCountVector v;
  for (const auto& ev : r.like_history) {
    if (!kinds.count(ev.kind)) continue;
    const int idx = ps.index_of(ev.party);
    if (idx >= 0) ++v.counts[idx];
  }
  return v;
}

/// Post likes are the signal everything downstream keys on.
inline PartyCountVector post_like_counts(const Respondent& r, const PartySpace& ps) {
  return like_counts(r, ps, {LikeKind::PostLike});
}

struct FilterRule {
  enum class Kind { HasVoteIntent, MinPoliticalLikes, HasAnyLikes };
  Kind kind = Kind::HasVoteIntent;
  int min_likes = 1;  // used by MinPoliticalLikes

  static FilterRule has_vote_intent() { return {Kind::HasVoteIntent, 1}; }
  static FilterRule min_political_likes(int k) { return {Kind::MinPoliticalLikes, k}; }
  static FilterRule has_any_likes() { return {Kind::HasAnyLikes, 1}; }
};

/// Returns the subset satisfying the rule, order preserved. "Political likes"
/// are post likes; other event kinds do not count toward the minimum.
inline Dataset filter_dataset(const Dataset& ds, const FilterRule& rule) {
  Dataset out;
  out.party_space = ds.party_space;
  out.window_start = ds.window_start;
  out.window_end = ds.window_end;
  for (const auto& r : ds.respondents) {
    bool keep = false;
    switch (rule.kind) {
      case FilterRule::Kind::HasVoteIntent:
        keep = r.survey.vote_intent.has_value();
        break;
      case FilterRule::Kind::MinPoliticalLikes:
        keep = post_like_counts(r, ds.party_space).total() >= rule.min_likes;
        break;
      case FilterRule::Kind::HasAnyLikes:
        keep = !r.like_history.empty();
        break;
    }
    if (keep) out.respondents.push_back(r);
  }
  return out;
}

/// Dense row-major matrix. Small problems only; no BLAS.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(size_t r, size_t c) { return data[r * cols + c]; }
  double at(size_t r, size_t c) const { return data[r * cols + c]; }
  const double* row(size_t r) const { return data.data() + r * cols; }
  double* row(size_t r) { return data.data() + r * cols; }
};

}  // namespace likevote
