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
#include <likevote/features.hpp>
#include <likevote/rng.hpp>
#include <likevote/rule.hpp>
#include <likevote/synth.hpp>

#include "test_support.hpp"

using namespace likevote;
using namespace likevote::testing;
using Catch::Approx;

TEST_CASE("rule_predict") {
  SECTION("plain argmax with vacuous gates") {
    REQUIRE(rule_predict(counts_of({5, 2}), 1, 0.0) == 0);
  }
  SECTION("minimum likes excludes a six-like user at threshold seven") {
    REQUIRE(!rule_predict(counts_of({3, 3}), 7, 0.0));
    REQUIRE(rule_predict(counts_of({4, 3}), 7, 0.0) == 0);
  }
  SECTION("party like cap excludes an even split at 0.8") {
    REQUIRE(!rule_predict(counts_of({4, 4}), 1, 0.8));
  }
  SECTION("argmax tie breaks to the lowest index") {
    REQUIRE(rule_predict(counts_of({0, 3, 3}), 1, 0.0) == 1);
  }
  SECTION("zero total is always excluded") {
    REQUIRE(!rule_predict(counts_of({}), 1, 0.0));
  }
  SECTION("scale invariance with min_likes fixed at 1") {
    Rng rng(314);
    for (int t = 0; t < 100; ++t) {
      PartyCountVector v;
      for (int i = 0; i < kNumParties; ++i) v.counts[i] = rng.index(6);
      if (v.total() == 0) v.counts[2] = 1;
      const double plc = rng.uniform();
      const int mult = 1 + rng.index(9);
      PartyCountVector scaled;
      for (int i = 0; i < kNumParties; ++i) scaled.counts[i] = v.counts[i] * mult;
      REQUIRE(rule_predict(v, 1, plc) == rule_predict(scaled, 1, plc));
    }
  }
  SECTION("agrees with the argmax of the normalized share row") {
    Rng rng(272);
    for (int t = 0; t < 100; ++t) {
      PartyCountVector v;
      for (int i = 0; i < kNumParties; ++i) v.counts[i] = rng.index(8);
      if (v.total() == 0) v.counts[0] = 1;
      const auto pred = rule_predict(v, 1, 0.0);
      REQUIRE(pred.has_value());
      const auto shares = normalize_likes(v).shares;
      int top = 0;
      for (int i = 1; i < kNumParties; ++i)
        if (shares[i] > shares[top]) top = i;
      REQUIRE(*pred == top);
    }
  }
}

TEST_CASE("sweep_grid") {
  // Hand-built sample: three aligned users, one contrarian, one tiny history.
  std::vector<Respondent> rs;
  rs.push_back(test_respondent("a", {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 7}}, "P1"));
  rs.push_back(test_respondent("b", {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 7}}, "P2"));
  rs.push_back(test_respondent("c", {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}}, "P4"));
  rs.push_back(test_respondent("d", {{3, 1}}, "P4"));
  const Dataset ds = test_dataset(rs);

  SECTION("vacuous gates include everyone with a like") {
    const auto cells = sweep_grid(ds, {1}, {0.0});
    REQUIRE(cells.size() == 1);
    REQUIRE(cells[0].n_included == 4);
    // a correct, b correct, c wrong (predicts P3), d correct.
    REQUIRE(cells[0].accuracy == Approx(0.75));
    REQUIRE(cells[0].ci_95 ==
            Approx(1.96 * std::sqrt(0.75 * 0.25 / 4)));
  }
  SECTION("unreachable min likes yields an empty cell") {
    const auto cells = sweep_grid(ds, {100}, {0.0});
    REQUIRE(cells[0].n_included == 0);
    REQUIRE(std::isnan(cells[0].accuracy));
  }
  SECTION("tightening the cap raises accuracy on planted data") {
    const AppConfig app = default_config();
    GenConfig gen;
    gen.n_respondents = 3000;
    gen.seed = 61;
    gen.alignment = 0.85;
    const Dataset planted = generate(gen, app.party_space, app.survey);
    const auto cells = sweep_grid(planted, {7}, {0.0, 0.8});
    REQUIRE(cells[0].n_included > cells[1].n_included);
    REQUIRE(cells[1].accuracy >= cells[0].accuracy);
  }
  SECTION("n_included is nonincreasing in both gates") {
    Rng rng(95);
    std::vector<Respondent> many;
    for (int i = 0; i < 200; ++i) {
      std::vector<std::pair<int, int64_t>> likes;
      const int m = 1 + rng.index(12);
      const int party = rng.index(9);
      for (int e = 0; e < m; ++e)
        likes.emplace_back(rng.bernoulli(0.7) ? party : rng.index(9), e);
      many.push_back(test_respondent("r" + std::to_string(i), likes,
                                     "P" + std::to_string(1 + rng.index(9))));
    }
    const Dataset big = test_dataset(many);
    const std::vector<int> mls = {1, 3, 5, 7};
    const std::vector<double> plcs = {0.0, 0.25, 0.5, 0.75, 0.9};
    const auto cells = sweep_grid(big, mls, plcs);
    auto cell_at = [&](size_t mi, size_t pi) { return cells[mi * plcs.size() + pi]; };
    for (size_t mi = 0; mi < mls.size(); ++mi)
      for (size_t pi = 0; pi + 1 < plcs.size(); ++pi)
        REQUIRE(cell_at(mi, pi + 1).n_included <= cell_at(mi, pi).n_included);
    for (size_t pi = 0; pi < plcs.size(); ++pi)
      for (size_t mi = 0; mi + 1 < mls.size(); ++mi)
        REQUIRE(cell_at(mi + 1, pi).n_included <= cell_at(mi, pi).n_included);
  }
}
