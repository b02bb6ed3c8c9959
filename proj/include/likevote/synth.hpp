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
#include <cstdio>
#include <string>
#include <vector>

#include "likevote/forecast.hpp"
#include "likevote/propagation.hpp"
#include "likevote/rng.hpp"

namespace likevote {

/// Knobs for the synthetic population. Every pipeline stage runs on the
/// output, with signal strengths chosen per experiment.
struct GenConfig {
  int n_respondents = 1000;
  uint64_t seed = 1;

  /// Probability a like goes to the respondent's true party; the remainder
  /// spreads uniformly over the other eight. 1/9 is pure noise.
  double alignment = 0.8;

  /// Likes per user: ceil(LogNormal(mu, sigma)), at least 1. A big head and
  /// a long tail, so the mean sits well above the median.
  double likes_log_mu = 1.4;
  double likes_log_sigma = 1.2;

  /// Probability an opinion answer reveals the party profile; the remainder
  /// is uniform over the scale.
  double survey_signal = 0.5;

  /// Oversampling strength for the youngest age band (0 = representative).
  /// Parties lean toward age bands, so a skewed sample biases party counts.
  double age_skew = 0.0;

  std::array<double, kNumParties> party_priors{1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9,
                                               1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9};

  double p_no_vote = 0.0;   // vote intent withheld
  double p_no_likes = 0.0;  // empty like history

  // Event kind mix for generated likes.
  double p_post_like = 0.85;
  double p_comment_like = 0.09;
  double p_tag_made = 0.03;
  double p_tag_received = 0.03;

  int64_t window_start = 1420070400;  // 2015-01-01
  int64_t window_end = 1483228800;    // 2017-01-01

  // Social layer.
  int n_media_posts = 40;
  int likers_per_post = 12;
  int commenters_per_post = 8;
  double political_fraction = 0.3;
  int n_tags = 200;
  int n_comment_like_edges = 200;

  // Polls for the forecast stage, as day offsets back from the window end.
  int poll_days_before_end[2] = {400, 380};

  void validate() const {
    if (n_respondents <= 0) throw InvalidConfigError("n_respondents must be positive");
    if (alignment < 1.0 / 9 - 1e-12 || alignment > 1.0)
      throw InvalidConfigError("alignment must lie in [1/9, 1]");
    if (survey_signal < 0.0 || survey_signal > 1.0)
      throw InvalidConfigError("survey_signal must lie in [0, 1]");
    if (age_skew < 0.0) throw InvalidConfigError("age_skew must be nonnegative");
    if (p_no_vote < 0.0 || p_no_vote >= 1.0 || p_no_likes < 0.0 || p_no_likes >= 1.0)
      throw InvalidConfigError("drop probabilities must lie in [0, 1)");
    if (window_end <= window_start) throw InvalidConfigError("empty collection window");
    double s = 0.0;
    for (double p : party_priors) {
      if (p < 0.0) throw InvalidConfigError("party priors must be nonnegative");
      s += p;
    }
    if (std::fabs(s - 1.0) > 1e-9) throw InvalidConfigError("party priors must sum to 1");
  }
};

namespace detail {

/// Party-conditional opinion profile: which scale level each party peaks at.
/// Seeded by (party, item) alone, so the profile is identical in every run.
inline int opinion_level(int party, int item, int scale) {
  Rng rng(splitmix64(0x9e3779b9ULL + static_cast<uint64_t>(party) * 131 +
                     static_cast<uint64_t>(item)));
  return 1 + rng.index(scale);
}

/// Age-band affinity: low party indices lean young, high indices lean old.
inline std::array<double, 3> band_weights(int party) {
  const double young = 1.5 - static_cast<double>(party) / 8.0;
  return {young, 1.0, 2.0 - young};
}

}  // namespace detail

struct SynthBundle {
  Dataset dataset;
  std::vector<int> true_party;  // per respondent, generation truth
  std::vector<MediaPost> media_posts;
  std::vector<std::pair<std::string, std::string>> tags;  // tagger, tagged
  std::vector<CommentLikeEdge> comment_likes;
  std::array<PollObservation, 2> polls;
  ShareVector true_shares;  // population party shares, the "election result"
};

/// Generates the full synthetic world: respondents with surveys and like
/// histories, a social layer, and two historical polls. Deterministic from
/// the seed; generation is single-threaded by design.
inline SynthBundle generate_bundle(const GenConfig& cfg, const PartySpace& ps,
                                   const SurveySchema& schema) {
  cfg.validate();
  ps.validate();
  if (schema.age_band_categories.size() != 3)
    throw InvalidConfigError("generator expects exactly 3 age bands");

  Rng rng(cfg.seed);
  SynthBundle bundle;
  bundle.dataset.party_space = ps;
  bundle.dataset.window_start = cfg.window_start;
  bundle.dataset.window_end = cfg.window_end;
  bundle.true_shares.shares = cfg.party_priors;

  // Joint (party, band) weights with the young-band oversampling bias.
  const std::array<double, 3> bias = {1.0 + cfg.age_skew, 1.0, 1.0 / (1.0 + cfg.age_skew)};
  std::vector<double> joint(kNumParties * 3);
  for (int p = 0; p < kNumParties; ++p) {
    const auto bw = detail::band_weights(p);
    double norm = bw[0] + bw[1] + bw[2];
    for (int b = 0; b < 3; ++b)
      joint[p * 3 + b] = cfg.party_priors[p] * (bw[b] / norm) * bias[b];
  }

  const int64_t span = cfg.window_end - cfg.window_start;
  const int n_items = static_cast<int>(schema.opinion_items.size());

  for (int i = 0; i < cfg.n_respondents; ++i) {
    const int cell = rng.categorical(joint);
    const int party = cell / 3;
    const int band = cell % 3;

    Respondent r;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "r%06d", i);
    r.respondent_id = buf;

    r.survey.gender = schema.gender_categories[rng.index(
        static_cast<int>(schema.gender_categories.size()))];
    r.survey.age_band = schema.age_band_categories[band];
    r.survey.geography = schema.geography_categories[rng.index(
        static_cast<int>(schema.geography_categories.size()))];
    r.survey.education = schema.education_categories[rng.index(
        static_cast<int>(schema.education_categories.size()))];
    r.survey.opinions.resize(n_items);
    for (int item = 0; item < n_items; ++item) {
      r.survey.opinions[item] = rng.bernoulli(cfg.survey_signal)
                                    ? detail::opinion_level(party, item, schema.opinion_scale)
                                    : 1 + rng.index(schema.opinion_scale);
    }
    r.survey.vote_intent = rng.bernoulli(cfg.p_no_vote)
                               ? std::nullopt
                               : std::optional<std::string>(ps.parties[party]);

    if (!rng.bernoulli(cfg.p_no_likes)) {
      const int m = std::max(1, static_cast<int>(std::ceil(
                                    rng.log_normal(cfg.likes_log_mu, cfg.likes_log_sigma))));
      r.like_history.reserve(m);
      for (int e = 0; e < m; ++e) {
        LikeEvent ev;
        int liked = party;
        if (!rng.bernoulli(cfg.alignment)) {
          const int other = rng.index(kNumParties - 1);
          liked = other >= party ? other + 1 : other;
        }
        ev.party = ps.parties[liked];
        ev.timestamp = cfg.window_start + static_cast<int64_t>(rng.below(
                                              static_cast<uint64_t>(span + 1)));
        const double k = rng.uniform();
        if (k < cfg.p_post_like) {
          ev.kind = LikeKind::PostLike;
        } else if (k < cfg.p_post_like + cfg.p_comment_like) {
          ev.kind = LikeKind::CommentLike;
        } else if (k < cfg.p_post_like + cfg.p_comment_like + cfg.p_tag_made) {
          ev.kind = LikeKind::TagMade;
        } else {
          ev.kind = LikeKind::TagReceived;
        }
        r.like_history.push_back(ev);
      }
      std::stable_sort(r.like_history.begin(), r.like_history.end(),
                       [](const LikeEvent& a, const LikeEvent& b) {
                         return a.timestamp < b.timestamp;
                       });
    }

    bundle.true_party.push_back(party);
    bundle.dataset.respondents.push_back(std::move(r));
  }

  // Social layer over users who have at least one post like.
  std::vector<int> likers_pool;
  std::vector<std::vector<int>> by_party(kNumParties);
  for (int i = 0; i < cfg.n_respondents; ++i) {
    const auto& r = bundle.dataset.respondents[i];
    bool has_post_like = false;
    for (const auto& ev : r.like_history)
      if (ev.kind == LikeKind::PostLike) has_post_like = true;
    if (has_post_like) {
      likers_pool.push_back(i);
      by_party[bundle.true_party[i]].push_back(i);
    }
  }

  auto pick_user = [&](const std::vector<int>& pool) {
    return bundle.dataset.respondents[pool[rng.index(static_cast<int>(pool.size()))]]
        .respondent_id;
  };

  if (!likers_pool.empty()) {
    for (int j = 0; j < cfg.n_media_posts; ++j) {
      MediaPost post;
      char buf[24];
      std::snprintf(buf, sizeof(buf), "m%05d", j);
      post.post_id = buf;
      const bool political = rng.bernoulli(cfg.political_fraction);
      int focal = rng.index(kNumParties);
      if (political) {
        // Political conjecture: likers from the focal camp, commenters from
        // everywhere else.
        while (by_party[focal].empty()) focal = (focal + 1) % kNumParties;
        for (int u = 0; u < cfg.likers_per_post; ++u)
          post.liker_ids.push_back(pick_user(by_party[focal]));
        for (int u = 0; u < cfg.commenters_per_post; ++u) {
          std::string id = pick_user(likers_pool);
          post.commenter_ids.push_back(id);
        }
      } else {
        for (int u = 0; u < cfg.likers_per_post; ++u)
          post.liker_ids.push_back(pick_user(likers_pool));
        for (int u = 0; u < cfg.commenters_per_post; ++u)
          post.commenter_ids.push_back(pick_user(likers_pool));
      }
      bundle.media_posts.push_back(std::move(post));
    }
    for (int t = 0; t < cfg.n_tags; ++t)
      bundle.tags.emplace_back(pick_user(likers_pool), pick_user(likers_pool));
    for (int e = 0; e < cfg.n_comment_like_edges; ++e) {
      CommentLikeEdge edge;
      edge.liker_id = pick_user(likers_pool);
      edge.author_id = pick_user(likers_pool);
      if (rng.bernoulli(0.5)) {
        edge.page = PageKind::Political;
        char buf[24];
        std::snprintf(buf, sizeof(buf), "p%05d", rng.index(1000));
        edge.post_id = buf;
      } else {
        edge.page = PageKind::Media;
        edge.post_id =
            bundle.media_posts.empty()
                ? "m00000"
                : bundle.media_posts[rng.index(static_cast<int>(bundle.media_posts.size()))]
                      .post_id;
      }
      bundle.comment_likes.push_back(std::move(edge));
    }
  }

  // Two historical polls reporting the unbiased population shares.
  for (int p = 0; p < 2; ++p) {
    bundle.polls[p].date = cfg.window_end / 86400 - cfg.poll_days_before_end[p];
    bundle.polls[p].shares = bundle.true_shares;
  }
  return bundle;
}

/// Dataset-only convenience wrapper.
inline Dataset generate(const GenConfig& cfg, const PartySpace& ps, const SurveySchema& schema) {
  return generate_bundle(cfg, ps, schema).dataset;
}

}  // namespace likevote
