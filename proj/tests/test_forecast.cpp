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
#include <likevote/forecast.hpp>
#include <likevote/rng.hpp>

#include "test_support.hpp"

using namespace likevote;
using namespace likevote::testing;
using Catch::Approx;

namespace {

ShareVector shares_of(std::array<double, kNumParties> s) {
  ShareVector v;
  v.shares = s;
  return v;
}

}  // namespace

TEST_CASE("raw_count_shares") {
  SECTION("argmax voting with normalization") {
    std::vector<PartyCountVector> users = {counts_of({5, 1}), counts_of({3, 0}),
                                           counts_of({2, 1}), counts_of({0, 9})};
    const auto s = raw_count_shares(users);
    REQUIRE(s.shares[0] == Approx(0.75));
    REQUIRE(s.shares[1] == Approx(0.25));
  }
  SECTION("single user is a one-hot share") {
    const auto s = raw_count_shares({counts_of({0, 0, 7})});
    REQUIRE(s.shares[2] == 1.0);
  }
  SECTION("nine users, one per party, is uniform") {
    std::vector<PartyCountVector> users;
    for (int i = 0; i < 9; ++i) {
      PartyCountVector v;
      v.counts[i] = 3;
      users.push_back(v);
    }
    const auto s = raw_count_shares(users);
    for (int i = 0; i < 9; ++i) REQUIRE(s.shares[i] == Approx(1.0 / 9));
  }
  SECTION("empty list and zero-like users are errors") {
    REQUIRE_THROWS_AS(raw_count_shares({}), EmptyUserListError);
    REQUIRE_THROWS_AS(raw_count_shares({counts_of({})}), ZeroTotalError);
  }
  SECTION("argmax ties break to the lowest index") {
    const auto s = raw_count_shares({counts_of({0, 4, 4})});
    REQUIRE(s.shares[1] == 1.0);
  }
}

TEST_CASE("mae") {
  const ShareVector uniform = shares_of({1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9,
                                         1.0 / 9, 1.0 / 9, 1.0 / 9});
  ShareVector onehot = shares_of({});
  onehot.shares[0] = 1.0;

  REQUIRE(mae(uniform, uniform) == 0.0);
  REQUIRE(mae(uniform, onehot) == Approx(16.0 / 81.0));

  SECTION("symmetry and triangle inequality") {
    Rng rng(64);
    for (int t = 0; t < 50; ++t) {
      auto rand_shares = [&]() {
        std::array<double, 9> s{};
        double total = 0;
        for (int i = 0; i < 9; ++i) {
          s[i] = rng.uniform();
          total += s[i];
        }
        for (int i = 0; i < 9; ++i) s[i] /= total;
        return shares_of(s);
      };
      const auto a = rand_shares(), b = rand_shares(), c = rand_shares();
      REQUIRE(mae(a, b) == Approx(mae(b, a)));
      REQUIRE(mae(a, c) <= mae(a, b) + mae(b, c) + 1e-12);
    }
  }
}

TEST_CASE("fit_weights") {
  const ShareVector q = shares_of({0.10, 0.14, 0.06, 0.12, 0.20, 0.08, 0.11, 0.09, 0.10});

  SECTION("matching polls keep all-ones optimal") {
    const std::array<ShareVector, 2> fb = {q, q};
    const std::array<PollObservation, 2> polls = {PollObservation{100, q},
                                                  PollObservation{200, q}};
    const auto res = fit_weights(fb, polls);
    REQUIRE(res.objective == Approx(0.0).margin(1e-12));
    for (double w : res.weights) REQUIRE(w == Approx(1.0).margin(1e-6));
  }
  SECTION("a doubled party count earns a halved weight") {
    // Facebook counts overrepresent party 0 by a factor of two.
    std::array<double, 9> skewed{};
    double total = 0;
    for (int i = 0; i < 9; ++i) {
      skewed[i] = q.shares[i] * (i == 0 ? 2.0 : 1.0);
      total += skewed[i];
    }
    for (int i = 0; i < 9; ++i) skewed[i] /= total;
    const std::array<ShareVector, 2> fb = {shares_of(skewed), shares_of(skewed)};
    const std::array<PollObservation, 2> polls = {PollObservation{100, q},
                                                  PollObservation{200, q}};
    const auto res = fit_weights(fb, polls);
    REQUIRE(res.objective < 1e-8);
    const double ratio = res.weights[0] / res.weights[1];
    REQUIRE(ratio == Approx(0.5).margin(0.01));
    // All the untouched parties keep equal weights.
    for (int i = 2; i < 9; ++i)
      REQUIRE(res.weights[i] / res.weights[1] == Approx(1.0).margin(0.01));
  }
  SECTION("objective never exceeds the all-ones start") {
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
      auto rand_shares = [&]() {
        std::array<double, 9> s{};
        double total = 0;
        for (int i = 0; i < 9; ++i) {
          s[i] = 0.02 + rng.uniform();
          total += s[i];
        }
        for (int i = 0; i < 9; ++i) s[i] /= total;
        return shares_of(s);
      };
      const std::array<ShareVector, 2> fb = {rand_shares(), rand_shares()};
      const std::array<PollObservation, 2> polls = {PollObservation{1, rand_shares()},
                                                    PollObservation{2, rand_shares()}};
      std::array<double, 9> ones;
      ones.fill(1.0);
      const double start = detail::weight_objective(ones, fb, polls);
      const auto res = fit_weights(fb, polls);
      REQUIRE(res.objective <= start + 1e-12);
    }
  }
  SECTION("one-hot counts with mismatched polls flag degenerate input") {
    ShareVector onehot = shares_of({});
    onehot.shares[3] = 1.0;
    const std::array<ShareVector, 2> fb = {onehot, q};
    const std::array<PollObservation, 2> polls = {PollObservation{100, q},
                                                  PollObservation{200, q}};
    const auto res = fit_weights(fb, polls);
    REQUIRE(res.degenerate);
  }
  SECTION("identical poll dates are rejected") {
    const std::array<ShareVector, 2> fb = {q, q};
    const std::array<PollObservation, 2> polls = {PollObservation{100, q},
                                                  PollObservation{100, q}};
    REQUIRE_THROWS_AS(fit_weights(fb, polls), DegenerateInputError);
  }
}

TEST_CASE("forecast") {
  std::vector<PartyCountVector> users = {counts_of({5, 1}), counts_of({3, 0}),
                                         counts_of({2, 1}), counts_of({0, 9})};
  std::array<double, 9> ones;
  ones.fill(1.0);

  SECTION("all-ones weights reproduce raw shares") {
    const auto raw = raw_count_shares(users);
    const auto fc = forecast(users, ones);
    for (int i = 0; i < 9; ++i) REQUIRE(fc.shares[i] == Approx(raw.shares[i]));
  }
  SECTION("one-hot weight concentrates the forecast") {
    std::array<double, 9> w{};
    w[1] = 1.0;
    const auto fc = forecast(users, w);
    REQUIRE(fc.shares[1] == Approx(1.0));
  }
  SECTION("positive rescaling changes nothing") {
    Rng rng(3);
    std::array<double, 9> w;
    for (auto& x : w) x = 0.1 + rng.uniform();
    const auto a = forecast(users, w);
    for (auto& x : w) x *= 37.5;
    const auto b = forecast(users, w);
    for (int i = 0; i < 9; ++i) REQUIRE(a.shares[i] == Approx(b.shares[i]));
    REQUIRE(a.sum() == Approx(1.0).margin(1e-9));
  }
  SECTION("zero weight mass is an error") {
    std::array<double, 9> zero{};
    REQUIRE_THROWS_AS(forecast(users, zero), ZeroWeightMassError);
  }
}

TEST_CASE("window_count_shares picks the trailing week") {
  const PartySpace ps = test_party_space();
  Respondent r1 = test_respondent("a", {});
  r1.like_history = {{"P1", 100 * 86400, LikeKind::PostLike},
                     {"P2", 200 * 86400, LikeKind::PostLike}};
  Respondent r2 = test_respondent("b", {});
  r2.like_history = {{"P3", 199 * 86400, LikeKind::PostLike}};
  Dataset ds = test_dataset({r1, r2});
  ds.window_end = 400 * 86400;

  // Window covering day 193..200 sees P2 (day 200) and P3 (day 199) only.
  const auto s = window_count_shares(ds, 200 * 86400, 7);
  REQUIRE(s.shares[1] == Approx(0.5));
  REQUIRE(s.shares[2] == Approx(0.5));
  REQUIRE(s.shares[0] == 0.0);
}
