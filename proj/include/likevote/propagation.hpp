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
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "likevote/features.hpp"

namespace likevote {

/// Cumulative, unnormalized party-affinity vector a user accrues from tags
/// and comment likes exchanged with other users.
struct PropagationVector {
  std::array<double, kNumParties> values{};

  void add(const std::array<double, kNumParties>& v) {
    for (int i = 0; i < kNumParties; ++i) values[i] += v[i];
  }
};

/// Normalized post-like vector per user id; the lookup base for propagation.
using LikeVectorDb = std::map<std::string, NormalizedLikeVector>;

/// Propagation totals per user. std::map keeps emission order deterministic.
struct PropagationState {
  std::map<std::string, PropagationVector> by_user;
};

/// A tag exchanges like vectors both ways: the tagger accrues the tagged
/// user's vector and vice versa. Additive, so any processing order of the
/// same tag multiset lands on the same totals. Self-tags are processed like
/// any other tag (the user accrues their own vector).
inline void apply_tag(const std::string& tagger, const std::string& tagged,
                      const LikeVectorDb& db, PropagationState& state) {
  const auto it_tagger = db.find(tagger);
  const auto it_tagged = db.find(tagged);
  if (it_tagger == db.end() || it_tagged == db.end()) return;  // unknown users carry no signal
  state.by_user[tagger].add(it_tagged->second.shares);
  state.by_user[tagged].add(it_tagger->second.shares);
}

struct MediaPost {
  std::string post_id;
  std::vector<std::string> liker_ids;
  std::vector<std::string> commenter_ids;
};

namespace detail {

/// Arithmetic mean of the known users' normalized like vectors; nullopt when
/// no user is known.
inline std::optional<std::array<double, kNumParties>> mean_vector(
    const std::vector<std::string>& ids, const LikeVectorDb& db) {
  std::array<double, kNumParties> sum{};
  int64_t known = 0;
  for (const auto& id : ids) {
    const auto it = db.find(id);
    if (it == db.end()) continue;
    for (int i = 0; i < kNumParties; ++i) sum[i] += it->second.shares[i];
    ++known;
  }
  if (known == 0) return std::nullopt;
  for (int i = 0; i < kNumParties; ++i) sum[i] /= static_cast<double>(known);
  return sum;
}

inline double norm(const std::array<double, kNumParties>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

/// Cosine distance between the mean like vector of a post's likers and of its
/// commenters. High values mark posts whose audiences disagree, i.e. posts
/// likely to carry political content. In [0, 1] for nonnegative vectors.
inline double political_score(const MediaPost& post, const LikeVectorDb& db) {
  const auto likers = detail::mean_vector(post.liker_ids, db);
  const auto commenters = detail::mean_vector(post.commenter_ids, db);
  if (!likers || !commenters)
    throw UnscorableError("post " + post.post_id + ": no known likers or commenters");
  const double nl = detail::norm(*likers);
  const double nc = detail::norm(*commenters);
  if (nl == 0.0 || nc == 0.0)
    throw UnscorableError("post " + post.post_id + ": zero aggregate vector");
  double dot = 0.0;
  for (int i = 0; i < kNumParties; ++i) dot += (*likers)[i] * (*commenters)[i];
  return 1.0 - dot / (nl * nc);
}

/// The quarter of scorable media posts with the highest political score,
/// ties at the cut included. Unscorable posts are skipped; fewer than four
/// scorable posts is an error.
inline std::set<std::string> select_political(const std::vector<MediaPost>& posts,
                                              const LikeVectorDb& db) {
  std::vector<std::pair<double, const MediaPost*>> scored;
  for (const auto& p : posts) {
    try {
      scored.emplace_back(political_score(p, db), &p);
    } catch (const UnscorableError&) {
    }
  }
  if (scored.size() < 4)
    throw TooFewPostsError("select_political: need at least 4 scorable posts, have " +
                           std::to_string(scored.size()));
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  const size_t quota = (scored.size() + 3) / 4;  // ceil(n/4)
  const double cut = scored[quota - 1].first;
  std::set<std::string> selected;
  for (const auto& [score, post] : scored)
    if (score >= cut) selected.insert(post->post_id);
  return selected;
}

enum class PageKind { Political, Media };

struct CommentLikeEdge {
  std::string liker_id;   // user who liked the comment
  std::string author_id;  // user who wrote the comment
  std::string post_id;
  PageKind page = PageKind::Media;
};

/// Comment likes propagate exactly like tags, but only on politicians' pages
/// or on media posts selected as political.
inline void apply_comment_like(const CommentLikeEdge& edge, const std::set<std::string>& political,
                               const LikeVectorDb& db, PropagationState& state) {
  if (edge.page != PageKind::Political && !political.count(edge.post_id)) return;
  apply_tag(edge.liker_id, edge.author_id, db, state);
}

}  // namespace likevote
