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
#include <likevote/nonresponse.hpp>
#include <likevote/rng.hpp>

#include "test_support.hpp"

using namespace likevote;
using namespace likevote::testing;
using Catch::Approx;

namespace {

/// Population with one binary-ish feature driven by gender categories.
Dataset population(int n, double p_female, uint64_t seed) {
  Rng rng(seed);
  std::vector<Respondent> rs;
  for (int i = 0; i < n; ++i) {
    Respondent r = test_respondent("r" + std::to_string(i), {{0, 1}});
    r.survey.gender = rng.bernoulli(p_female) ? "female" : "male";
    rs.push_back(std::move(r));
  }
  return test_dataset(std::move(rs));
}

Dataset random_subsample(const Dataset& full, double keep, uint64_t seed) {
  Rng rng(seed);
  Dataset sub = full;
  sub.respondents.clear();
  for (const auto& r : full.respondents)
    if (rng.bernoulli(keep)) sub.respondents.push_back(r);
  return sub;
}

/// Drops the given fraction of one category's members from the subsample.
Dataset planted_drop(const Dataset& full, const std::string& value, double drop, uint64_t seed) {
  Rng rng(seed);
  Dataset sub = full;
  sub.respondents.clear();
  for (const auto& r : full.respondents) {
    if (r.survey.gender == value && rng.bernoulli(drop)) continue;
    sub.respondents.push_back(r);
  }
  return sub;
}

}  // namespace

TEST_CASE("chi_squared") {
  SECTION("identical proportions score zero") {
    REQUIRE(chi_squared({50, 50}, {30, 30}) == Approx(0.0).margin(1e-12));
  }
  SECTION("hand-computed example") {
    REQUIRE(chi_squared({50, 50}, {100, 0}) == Approx(100.0));
  }
  SECTION("disjoint support stays finite") {
    const double x2 = chi_squared({100, 0}, {0, 100});
    REQUIRE(std::isfinite(x2));
    REQUIRE(x2 == Approx(100.0));  // only the expected-support cell counts
  }
  SECTION("nonnegative, zero only at equal proportions") {
    REQUIRE(chi_squared({50, 50}, {60, 40}) > 0.0);
    Rng rng(6);
    for (int t = 0; t < 100; ++t) {
      std::vector<int64_t> a(4), b(4);
      for (int i = 0; i < 4; ++i) {
        a[i] = 1 + rng.index(50);
        b[i] = 1 + rng.index(50);
      }
      const double x2 = chi_squared(a, b);
      REQUIRE(x2 >= 0.0);
      // Zero happens only when b matches a's proportions exactly.
      bool proportional = true;
      for (int i = 0; i < 4; ++i)
        if (a[i] * (b[0] + b[1] + b[2] + b[3]) != b[i] * (a[0] + a[1] + a[2] + a[3]))
          proportional = false;
      if (!proportional) REQUIRE(x2 > 0.0);
    }
  }
  SECTION("category sets must match") {
    REQUIRE_THROWS_AS(chi_squared({1, 2}, {1, 2, 3}), EmptyCategorySetError);
    REQUIRE_THROWS_AS(chi_squared({}, {}), EmptyCategorySetError);
  }
}

TEST_CASE("permutation_skew") {
  const Dataset full = population(1200, 0.5, 1);

  SECTION("sub equal to full is not significant") {
    const SkewReport rep = permutation_skew(full, full, "gender", 400, 9);
    REQUIRE(rep.skew == SkewGrade::NotSignificant);
    REQUIRE(rep.q025 <= rep.x2_mean);
    REQUIRE(rep.x2_mean <= rep.q975);
  }
  SECTION("random subsample is not significant") {
    const Dataset sub = random_subsample(full, 0.4, 2);
    const SkewReport rep = permutation_skew(full, sub, "gender", 400, 9);
    REQUIRE(rep.skew == SkewGrade::NotSignificant);
  }
  SECTION("dropping 80 percent of one category grades Large") {
    const Dataset sub = planted_drop(full, "female", 0.8, 3);
    const SkewReport rep = permutation_skew(full, sub, "gender", 400, 9);
    REQUIRE(rep.skew == SkewGrade::Large);
    REQUIRE(rep.x2_mean > rep.null_q975);
  }
  SECTION("reproducible from seed, any thread count") {
    const Dataset sub = random_subsample(full, 0.4, 2);
    const SkewReport a = permutation_skew(full, sub, "gender", 300, 77, {}, nullptr, 1);
    const SkewReport b = permutation_skew(full, sub, "gender", 300, 77, {}, nullptr, 4);
    REQUIRE(a.x2_mean == b.x2_mean);
    REQUIRE(a.q025 == b.q025);
    REQUIRE(a.q975 == b.q975);
    REQUIRE(a.null_q975 == b.null_q975);
  }
  SECTION("grade is monotone in the planted drop fraction") {
    int prev = -1;
    for (double drop : {0.0, 0.4, 0.7, 0.95}) {
      const Dataset sub = planted_drop(full, "female", drop, 5);
      const SkewReport rep = permutation_skew(full, sub, "gender", 400, 11);
      REQUIRE(static_cast<int>(rep.skew) >= prev);
      prev = static_cast<int>(rep.skew);
    }
  }
  SECTION("sub must be a subset of full") {
    Dataset stranger = test_dataset({test_respondent("zz_not_in_full", {{0, 1}})});
    REQUIRE_THROWS_AS(permutation_skew(full, stranger, "gender", 10, 1), SubNotSubsetError);
  }
  SECTION("opinion features address schema items") {
    const SurveySchema schema = test_schema();
    const Dataset sub = random_subsample(full, 0.5, 8);
    const SkewReport rep =
        permutation_skew(full, sub, "opinion:opinion_03", 100, 3, {}, &schema);
    REQUIRE(rep.feature == "opinion:opinion_03");
    REQUIRE_THROWS_AS(permutation_skew(full, sub, "opinion:bogus", 10, 3, {}, &schema),
                      UnknownCategoryError);
  }
}
