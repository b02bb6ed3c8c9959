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
#include <likevote/propagation.hpp>
#include <likevote/rng.hpp>

#include "test_support.hpp"

using namespace likevote;
using namespace likevote::testing;
using Catch::Approx;

namespace {

NormalizedLikeVector vec(std::array<double, kNumParties> shares) {
  NormalizedLikeVector v;
  v.shares = shares;
  return v;
}

}  // namespace

TEST_CASE("apply_tag exchanges like vectors") {
  LikeVectorDb db;
  db["A"] = vec({0, 0, 0, 0.4, 0, 0.4, 0.2, 0, 0});
  db["B"] = vec({0, 0, 0, 0.9, 0.1, 0, 0, 0, 0});
  PropagationState state;

  SECTION("worked example") {
    apply_tag("A", "B", db, state);
    const std::array<double, 9> expect_a = {0, 0, 0, 0.9, 0.1, 0, 0, 0, 0};
    const std::array<double, 9> expect_b = {0, 0, 0, 0.4, 0, 0.4, 0.2, 0, 0};
    for (int i = 0; i < 9; ++i) {
      REQUIRE(state.by_user["A"].values[i] == Approx(expect_a[i]));
      REQUIRE(state.by_user["B"].values[i] == Approx(expect_b[i]));
    }
  }
  SECTION("cumulative: a second identical tag doubles the vectors") {
    apply_tag("A", "B", db, state);
    apply_tag("A", "B", db, state);
    REQUIRE(state.by_user["A"].values[3] == Approx(1.8));
    REQUIRE(state.by_user["B"].values[3] == Approx(0.8));
  }
  SECTION("self-tag accrues the user's own vector") {
    apply_tag("A", "A", db, state);
    REQUIRE(state.by_user["A"].values[3] == Approx(0.8));  // both directions
    REQUIRE(state.by_user["A"].values[6] == Approx(0.4));
  }
  SECTION("order of the same tag multiset does not matter") {
    db["C"] = vec({1, 0, 0, 0, 0, 0, 0, 0, 0});
    std::vector<std::pair<std::string, std::string>> tags = {
        {"A", "B"}, {"B", "C"}, {"C", "A"}, {"A", "B"}, {"C", "C"}};
    PropagationState forward, backward;
    for (const auto& [x, y] : tags) apply_tag(x, y, db, forward);
    for (auto it = tags.rbegin(); it != tags.rend(); ++it)
      apply_tag(it->first, it->second, db, backward);
    for (const auto& [user, pv] : forward.by_user)
      for (int i = 0; i < 9; ++i)
        REQUIRE(pv.values[i] == Approx(backward.by_user[user].values[i]));
  }
}

TEST_CASE("political_score") {
  LikeVectorDb db;
  db["u1"] = vec({1, 0, 0, 0, 0, 0, 0, 0, 0});
  db["u2"] = vec({1, 0, 0, 0, 0, 0, 0, 0, 0});
  db["u3"] = vec({0, 1, 0, 0, 0, 0, 0, 0, 0});
  db["u4"] = vec({0.5, 0.5, 0, 0, 0, 0, 0, 0, 0});

  SECTION("identical aggregates score zero") {
    MediaPost p{"m1", {"u1"}, {"u2"}};
    REQUIRE(political_score(p, db) == Approx(0.0).margin(1e-12));
  }
  SECTION("orthogonal aggregates score one") {
    MediaPost p{"m2", {"u1"}, {"u3"}};
    REQUIRE(political_score(p, db) == Approx(1.0).margin(1e-12));
  }
  SECTION("worked cosine value") {
    MediaPost p{"m3", {"u1"}, {"u4"}};
    REQUIRE(political_score(p, db) == Approx(1.0 - 1.0 / std::sqrt(2.0)).margin(1e-12));
  }
  SECTION("unknown users are unscorable") {
    MediaPost p{"m4", {"ghost"}, {"u1"}};
    REQUIRE_THROWS_AS(political_score(p, db), UnscorableError);
  }
  SECTION("score stays in the unit interval for random nonnegative vectors") {
    Rng rng(44);
    for (int t = 0; t < 100; ++t) {
      LikeVectorDb rdb;
      for (int u = 0; u < 6; ++u) {
        std::array<double, 9> s{};
        double total = 0;
        for (int i = 0; i < 9; ++i) {
          s[i] = rng.uniform();
          total += s[i];
        }
        for (int i = 0; i < 9; ++i) s[i] /= total;
        rdb["u" + std::to_string(u)] = vec(s);
      }
      MediaPost p{"m", {"u0", "u1", "u2"}, {"u3", "u4", "u5"}};
      const double score = political_score(p, rdb);
      REQUIRE(score >= 0.0);
      REQUIRE(score <= 1.0);
    }
  }
}

TEST_CASE("select_political") {
  LikeVectorDb db;
  db["a"] = vec({1, 0, 0, 0, 0, 0, 0, 0, 0});
  db["b"] = vec({0, 1, 0, 0, 0, 0, 0, 0, 0});
  auto post_with_score = [&](const std::string& id, double mix) {
    // mix in [0,1]: 0 = identical audiences, 1 = orthogonal.
    LikeVectorDb& ref = db;
    const std::string liker = "a";
    std::array<double, 9> s{};
    s[0] = 1.0 - mix;
    s[1] = mix;
    ref["c_" + id] = vec(s);
    return MediaPost{id, {liker}, {"c_" + id}};
  };

  SECTION("quartile of four is the single top post") {
    std::vector<MediaPost> posts = {post_with_score("p1", 0.9), post_with_score("p2", 0.1),
                                    post_with_score("p3", 0.2), post_with_score("p4", 0.0)};
    const auto sel = select_political(posts, db);
    REQUIRE(sel == std::set<std::string>{"p1"});
  }
  SECTION("eight posts select exactly two absent ties") {
    std::vector<MediaPost> posts;
    for (int i = 0; i < 8; ++i)
      posts.push_back(post_with_score("p" + std::to_string(i), 0.1 * i));
    const auto sel = select_political(posts, db);
    REQUIRE(sel.size() == 2);
    REQUIRE(sel.count("p7") == 1);
    REQUIRE(sel.count("p6") == 1);
  }
  SECTION("all-equal scores include everything") {
    std::vector<MediaPost> posts;
    for (int i = 0; i < 6; ++i)
      posts.push_back(post_with_score("p" + std::to_string(i), 0.5));
    const auto sel = select_political(posts, db);
    REQUIRE(sel.size() == 6);
  }
  SECTION("fewer than four scorable posts is an error") {
    std::vector<MediaPost> posts = {post_with_score("p1", 0.5), post_with_score("p2", 0.5),
                                    post_with_score("p3", 0.5),
                                    MediaPost{"bad", {"ghost"}, {"ghost2"}}};
    REQUIRE_THROWS_AS(select_political(posts, db), TooFewPostsError);
  }
}

TEST_CASE("comment likes propagate only on eligible posts") {
  LikeVectorDb db;
  db["A"] = vec({0, 0, 0, 0.4, 0, 0.4, 0.2, 0, 0});
  db["B"] = vec({0, 0, 0, 0.9, 0.1, 0, 0, 0, 0});
  const std::set<std::string> political = {"m_selected"};
  PropagationState state;

  apply_comment_like({"A", "B", "m_other", PageKind::Media}, political, db, state);
  REQUIRE(state.by_user.empty());

  apply_comment_like({"A", "B", "m_selected", PageKind::Media}, political, db, state);
  REQUIRE(state.by_user["A"].values[3] == Approx(0.9));

  apply_comment_like({"A", "B", "whatever", PageKind::Political}, political, db, state);
  REQUIRE(state.by_user["A"].values[3] == Approx(1.8));
}
