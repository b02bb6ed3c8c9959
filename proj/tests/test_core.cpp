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
#include <catch2/catch_amalgamated.hpp>
#include <likevote/core.hpp>
#include <likevote/rng.hpp>

#include "test_support.hpp"

using namespace likevote;
using namespace likevote::testing;

TEST_CASE("party space validation") {
  PartySpace ps = test_party_space();
  REQUIRE_NOTHROW(ps.validate());
  REQUIRE(ps.index_of("P1") == 0);
  REQUIRE(ps.index_of("P9") == 8);
  REQUIRE(ps.index_of("nope") == -1);

  SECTION("wrong count") {
    ps.parties.pop_back();
    ps.blocs.pop_back();
    REQUIRE_THROWS_AS(ps.validate(), InvalidConfigError);
  }
  SECTION("duplicate id") {
    ps.parties[1] = "P1";
    REQUIRE_THROWS_AS(ps.validate(), InvalidConfigError);
  }
  SECTION("missing bloc") {
    ps.blocs.pop_back();
    REQUIRE_THROWS_AS(ps.validate(), InvalidConfigError);
  }
}

TEST_CASE("like_counts counts by kind and party") {
  const PartySpace ps = test_party_space();
  Respondent r = test_respondent("r1", {{0, 10}, {0, 20}, {2, 30}});

  SECTION("post likes") {
    const auto v = like_counts(r, ps, {LikeKind::PostLike});
    REQUIRE(v.counts[0] == 2);
    REQUIRE(v.counts[2] == 1);
    REQUIRE(v.total() == 3);
  }
  SECTION("empty history is all zero") {
    Respondent empty = test_respondent("r2", {});
    const auto v = like_counts(empty, ps, {LikeKind::PostLike});
    REQUIRE(v.total() == 0);
    REQUIRE(v.argmax() == -1);
  }
  SECTION("kind filter excludes everything else") {
    const auto v = like_counts(r, ps, {LikeKind::CommentLike});
    REQUIRE(v.total() == 0);
  }
  SECTION("kinds must be nonempty") {
    REQUIRE_THROWS_AS(like_counts(r, ps, {}), Error);
  }
}

TEST_CASE("like_counts total equals matching events for random histories") {
  const PartySpace ps = test_party_space();
  Rng rng(20260201);
  for (int trial = 0; trial < 50; ++trial) {
    Respondent r;
    r.respondent_id = "x";
    r.survey = test_survey();
    const int n = rng.index(40);
    int64_t expected_posts = 0;
    int64_t ts = 0;
    for (int i = 0; i < n; ++i) {
      LikeEvent ev;
      ev.party = ps.parties[rng.index(kNumParties)];
      ts += rng.index(100);
      ev.timestamp = ts;
      const int k = rng.index(4);
      ev.kind = static_cast<LikeKind>(k);
      if (ev.kind == LikeKind::PostLike) ++expected_posts;
      r.like_history.push_back(ev);
    }
    REQUIRE(post_like_counts(r, ps).total() == expected_posts);
    const auto all = like_counts(r, ps, {LikeKind::PostLike, LikeKind::CommentLike,
                                         LikeKind::TagMade, LikeKind::TagReceived});
    REQUIRE(all.total() == n);
  }
}

TEST_CASE("filter_dataset rules") {
  Respondent none = test_respondent("r1", {});
  Respondent one = test_respondent("r2", {{1, 5}});
  Respondent six = test_respondent("r3", {{1, 1}, {1, 2}, {1, 3}, {2, 4}, {2, 5}, {2, 6}});
  Respondent no_vote = test_respondent("r4", {{3, 9}}, "");
  const Dataset ds = test_dataset({none, one, six, no_vote});

  SECTION("MinPoliticalLikes(1) keeps respondents with likes") {
    const auto out = filter_dataset(ds, FilterRule::min_political_likes(1));
    REQUIRE(out.respondents.size() == 3);
    REQUIRE(out.respondents[0].respondent_id == "r2");
  }
  SECTION("MinPoliticalLikes(7) excludes a six-like respondent") {
    const auto out = filter_dataset(ds, FilterRule::min_political_likes(7));
    REQUIRE(out.respondents.empty());
  }
  SECTION("HasVoteIntent excludes missing intent") {
    const auto out = filter_dataset(ds, FilterRule::has_vote_intent());
    REQUIRE(out.respondents.size() == 3);
    for (const auto& r : out.respondents) REQUIRE(r.respondent_id != "r4");
  }
  SECTION("HasAnyLikes keeps any event kind") {
    const auto out = filter_dataset(ds, FilterRule::has_any_likes());
    REQUIRE(out.respondents.size() == 3);
  }
  SECTION("original untouched, order preserved") {
    filter_dataset(ds, FilterRule::min_political_likes(1));
    REQUIRE(ds.respondents.size() == 4);
    const auto out = filter_dataset(ds, FilterRule::has_vote_intent());
    REQUIRE(out.respondents[0].respondent_id == "r1");
    REQUIRE(out.respondents[2].respondent_id == "r3");
  }
}

TEST_CASE("filter_dataset is idempotent") {
  std::vector<Respondent> rs;
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    std::vector<std::pair<int, int64_t>> likes;
    const int n = rng.index(10);
    for (int j = 0; j < n; ++j) likes.emplace_back(rng.index(9), j);
    rs.push_back(test_respondent("r" + std::to_string(i), likes,
                                 rng.bernoulli(0.8) ? "P1" : ""));
  }
  const Dataset ds = test_dataset(rs);
  for (const auto rule : {FilterRule::has_vote_intent(), FilterRule::min_political_likes(3),
                          FilterRule::has_any_likes()}) {
    const Dataset once = filter_dataset(ds, rule);
    const Dataset twice = filter_dataset(once, rule);
    REQUIRE(twice.respondents.size() == once.respondents.size());
    for (size_t i = 0; i < once.respondents.size(); ++i)
      REQUIRE(twice.respondents[i].respondent_id == once.respondents[i].respondent_id);
  }
}

TEST_CASE("dataset validation catches bad records") {
  SECTION("duplicate ids") {
    Dataset ds = test_dataset({test_respondent("a", {}), test_respondent("a", {})});
    REQUIRE_THROWS_AS(ds.validate(), InvalidConfigError);
  }
  SECTION("timestamp outside window") {
    Dataset ds = test_dataset({test_respondent("a", {{0, 42}})});
    ds.window_end = 10;
    REQUIRE_THROWS_AS(ds.validate(), InvalidConfigError);
  }
  SECTION("unsorted history") {
    Dataset ds = test_dataset({test_respondent("a", {})});
    ds.respondents[0].like_history = {{"P1", 50, LikeKind::PostLike},
                                      {"P2", 10, LikeKind::PostLike}};
    REQUIRE_THROWS_AS(ds.validate(), InvalidConfigError);
  }
  SECTION("unknown party") {
    Dataset ds = test_dataset({test_respondent("a", {})});
    ds.respondents[0].like_history = {{"Q1", 50, LikeKind::PostLike}};
    REQUIRE_THROWS_AS(ds.validate(), InvalidConfigError);
  }
}
