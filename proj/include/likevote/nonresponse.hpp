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
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "likevote/core.hpp"
#include "likevote/features.hpp"
#include "likevote/rng.hpp"

namespace likevote {

/// Pearson chi-squared of sample b against expected counts scaled from
/// sample a's proportions. Categories a never observed are skipped (their
/// expected count is zero), which keeps disjoint-support inputs finite.
inline double chi_squared(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
  if (a.empty() || a.size() != b.size())
    throw EmptyCategorySetError("chi_squared: category sets must match and be nonempty");
  double total_a = 0.0, total_b = 0.0;
  for (int64_t c : a) total_a += static_cast<double>(c);
  for (int64_t c : b) total_b += static_cast<double>(c);
  if (total_a < 1.0 || total_b < 1.0)
    throw EmptyCategorySetError("chi_squared: both samples need at least one observation");
  double x2 = 0.0;
  for (size_t c = 0; c < a.size(); ++c) {
    if (a[c] == 0) continue;
    const double expected = total_b * (static_cast<double>(a[c]) / total_a);
    const double diff = static_cast<double>(b[c]) - expected;
    x2 += diff * diff / expected;
  }
  return x2;
}

enum class SkewGrade { NotSignificant, Small, Medium, Large };

inline const char* skew_grade_name(SkewGrade g) {
  switch (g) {
    case SkewGrade::NotSignificant: return "not_significant";
    case SkewGrade::Small: return "small";
    case SkewGrade::Medium: return "medium";
    case SkewGrade::Large: return "large";
  }
  return "?";
}

/// Grade boundaries on the excess ratio x2_mean / null_q975. The source
/// method grades skew without a formula; this ratio is our interpretation
/// and the thresholds are configuration.
struct SkewThresholds {
  double small = 1.0;   // excess in (small, medium]  -> Small
  double medium = 2.0;  // excess in (medium, large]  -> Medium
  double large = 4.0;   // excess above large         -> Large
};

struct SkewReport {
  std::string feature;
  double x2_mean = 0.0;  // mean over the observed permutation distribution
  double q025 = 0.0;     // quantiles of the observed distribution
  double q975 = 0.0;
  double null_q975 = 0.0;  // 97.5% quantile of the full-vs-full null
  SkewGrade skew = SkewGrade::NotSignificant;
};

/// Categorical view of one survey feature. Values for opinion items are their
/// ordinal answers; vote intent maps missing answers to "none".
inline std::string feature_value(const Respondent& r, const std::string& feature,
                                 const SurveySchema* schema = nullptr) {
  if (feature == "gender") return r.survey.gender;
  if (feature == "age_band") return r.survey.age_band;
  if (feature == "geography") return r.survey.geography;
  if (feature == "education") return r.survey.education;
  if (feature == "party_choice") return r.survey.vote_intent ? *r.survey.vote_intent : "none";
  if (feature.rfind("opinion:", 0) == 0) {
    const std::string item = feature.substr(8);
    size_t idx = 0;
    bool found = false;
    if (schema) {
      for (size_t i = 0; i < schema->opinion_items.size(); ++i)
        if (schema->opinion_items[i] == item) {
          idx = i;
          found = true;
        }
    }
    if (!found) throw UnknownCategoryError("unknown opinion item '" + item + "'");
    return std::to_string(r.survey.opinions[idx]);
  }
  throw UnknownCategoryError("unknown feature '" + feature + "'");
}

namespace detail {

inline std::vector<int> feature_codes(const Dataset& ds, const std::string& feature,
                                      const SurveySchema* schema,
                                      std::vector<std::string>& categories) {
  std::vector<std::string> raw(ds.respondents.size());
  std::set<std::string> seen;
  for (size_t i = 0; i < ds.respondents.size(); ++i) {
    raw[i] = feature_value(ds.respondents[i], feature, schema);
    seen.insert(raw[i]);
  }
  for (const auto& c : seen)
    if (std::find(categories.begin(), categories.end(), c) == categories.end())
      categories.push_back(c);
  std::vector<int> codes(raw.size());
  for (size_t i = 0; i < raw.size(); ++i)
    codes[i] = static_cast<int>(std::find(categories.begin(), categories.end(), raw[i]) -
                                categories.begin());
  return codes;
}

inline std::vector<int64_t> count_sample(const std::vector<int>& codes,
                                         const std::vector<int>& picks, int n_categories) {
  std::vector<int64_t> counts(n_categories, 0);
  for (int i : picks) ++counts[codes[i]];
  return counts;
}

inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::nan("");
  const double pos = q * (sorted.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - lo;
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace detail

/// Permutation skew test of one categorical feature, comparing a filtered
/// subsample against the full survey.
///
/// Null distribution: chi-squared between two disjoint random samples from
/// the full survey. Observed distribution: chi-squared between a random
/// full-survey sample and a random subsample draw. Both use the same sample
/// size, min(|sub|, |full|/2), without replacement, so the two distributions
/// are directly comparable. Skew is significant iff the observed mean exceeds
/// the null 97.5% quantile; the grade comes from the excess ratio.
/// Iterations use per-index derived seeds, so thread count cannot change any
/// number.
inline SkewReport permutation_skew(const Dataset& full, const Dataset& sub,
                                   const std::string& feature, int n_perm = 10000,
                                   uint64_t seed = 0, const SkewThresholds& thresholds = {},
                                   const SurveySchema* schema = nullptr, int threads = 1) {
  std::set<std::string> full_ids;
  for (const auto& r : full.respondents) full_ids.insert(r.respondent_id);
  for (const auto& r : sub.respondents)
    if (!full_ids.count(r.respondent_id))
      throw SubNotSubsetError("respondent " + r.respondent_id + " not in the full survey");
  if (full.respondents.empty() || sub.respondents.empty())
    throw EmptyCategorySetError("permutation_skew: empty dataset");

  std::vector<std::string> categories;
  const std::vector<int> full_codes = detail::feature_codes(full, feature, schema, categories);
  const std::vector<int> sub_codes = detail::feature_codes(sub, feature, schema, categories);
  const int n_categories = static_cast<int>(categories.size());

  const int n_full = static_cast<int>(full_codes.size());
  const int n_sub = static_cast<int>(sub_codes.size());
  const int sample_size = std::max(1, std::min(n_sub, n_full / 2));

  std::vector<double> null_x2(n_perm), obs_x2(n_perm);
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int it = next.fetch_add(1);
      if (it >= n_perm) return;
      Rng rng(derive_seed(seed, static_cast<uint64_t>(it)));
      // Two disjoint draws from full: one shuffled prefix, split in half.
      const auto both = rng.sample_without_replacement(n_full, 2 * sample_size);
      std::vector<int> a(both.begin(), both.begin() + sample_size);
      std::vector<int> b(both.begin() + sample_size, both.end());
      null_x2[it] = chi_squared(detail::count_sample(full_codes, a, n_categories),
                                detail::count_sample(full_codes, b, n_categories));
      const auto from_full = rng.sample_without_replacement(n_full, sample_size);
      const auto from_sub = rng.sample_without_replacement(n_sub, sample_size);
      obs_x2[it] = chi_squared(detail::count_sample(full_codes, from_full, n_categories),
                               detail::count_sample(sub_codes, from_sub, n_categories));
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SkewReport report;
  report.feature = feature;
  double mean = 0.0;
  for (double v : obs_x2) mean += v;
  report.x2_mean = mean / n_perm;

  std::sort(obs_x2.begin(), obs_x2.end());
  std::sort(null_x2.begin(), null_x2.end());
  report.q025 = detail::quantile_sorted(obs_x2, 0.025);
  report.q975 = detail::quantile_sorted(obs_x2, 0.975);
  report.null_q975 = detail::quantile_sorted(null_x2, 0.975);

  const double excess = report.null_q975 > 0.0 ? report.x2_mean / report.null_q975
                                               : std::numeric_limits<double>::infinity();
  if (excess <= thresholds.small) {
    report.skew = SkewGrade::NotSignificant;
  } else if (excess <= thresholds.medium) {
    report.skew = SkewGrade::Small;
  } else if (excess <= thresholds.large) {
    report.skew = SkewGrade::Medium;
  } else {
    report.skew = SkewGrade::Large;
  }
  return report;
}

}  // namespace likevote
