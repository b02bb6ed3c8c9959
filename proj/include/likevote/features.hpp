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

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "likevote/core.hpp"

namespace likevote {

/// Per-party like shares; produced only from count vectors with total >= 1,
/// so the shares always sum to 1.
struct NormalizedLikeVector {
  std::array<double, kNumParties> shares{};
};

inline NormalizedLikeVector normalize_likes(const PartyCountVector& v) {
  const int64_t total = v.total();
  if (total == 0) throw ZeroTotalError("cannot normalize an all-zero like vector");
  NormalizedLikeVector out;
  for (int i = 0; i < kNumParties; ++i)
    out.shares[i] = static_cast<double>(v.counts[i]) / static_cast<double>(total);
  return out;
}

/// One-hot over parties at the post like with the greatest timestamp.
/// Ties resolve to the event appearing later in the sorted history.
inline std::array<double, kNumParties> single_latest_like(const Respondent& r,
                                                          const PartySpace& ps) {
  int best_party = -1;
  int64_t best_ts = 0;
  for (const auto& ev : r.like_history) {
    if (ev.kind != LikeKind::PostLike) continue;
    if (best_party < 0 || ev.timestamp >= best_ts) {
      best_ts = ev.timestamp;
      best_party = ps.index_of(ev.party);
    }
  }
  if (best_party < 0) throw NoPoliticalLikesError("no post likes in history");
  std::array<double, kNumParties> out{};
  out[best_party] = 1.0;
  return out;
}

enum class OpinionEncoding { Centered, OneHot };

/// Declares the closed category sets and the ordinal opinion scale. Loaded
/// from config; category cardinalities are synthetic, not survey-given.
struct SurveySchema {
  std::vector<std::string> gender_categories;
  std::vector<std::string> age_band_categories;
  std::vector<std::string> geography_categories;
  std::vector<std::string> education_categories;
  std::vector<std::string> opinion_items;  // item names, fixed order
  int opinion_scale = 5;                   // values 1..opinion_scale
  OpinionEncoding opinion_encoding = OpinionEncoding::Centered;

  int num_demographic_columns() const {
    return static_cast<int>(gender_categories.size() + age_band_categories.size() +
                            geography_categories.size() + education_categories.size());
  }
};

namespace detail {

inline void one_hot_append(const std::string& value, const std::vector<std::string>& categories,
                           const std::string& item, std::vector<double>& row) {
  int hit = -1;
  for (int i = 0; i < static_cast<int>(categories.size()); ++i)
    if (categories[i] == value) hit = i;
  if (hit < 0)
    throw UnknownCategoryError("survey item '" + item + "' has unknown value '" + value + "'");
  for (int i = 0; i < static_cast<int>(categories.size()); ++i)
    row.push_back(i == hit ? 1.0 : 0.0);
}

}  // namespace detail

/// Column names matching encode_survey's output order.
inline std::vector<std::string> survey_column_names(const SurveySchema& schema) {
  std::vector<std::string> names;
  auto add_group = [&](const char* item, const std::vector<std::string>& cats) {
    for (const auto& c : cats) names.push_back(std::string("survey:") + item + "=" + c);
  };
  add_group("gender", schema.gender_categories);
  add_group("age_band", schema.age_band_categories);
  add_group("geography", schema.geography_categories);
  add_group("education", schema.education_categories);
  for (const auto& item : schema.opinion_items) {
    if (schema.opinion_encoding == OpinionEncoding::Centered) {
      names.push_back("survey:" + item);
    } else {
      for (int v = 1; v <= schema.opinion_scale; ++v)
        names.push_back("survey:" + item + "=" + std::to_string(v));
    }
  }
  return names;
}

/// Encodes one survey: categoricals one-hot, opinion items either centered
/// numeric (default) or one-hot per the schema flag.
inline std::vector<double> encode_survey(const SurveyResponse& s, const SurveySchema& schema) {
  std::vector<double> row;
  detail::one_hot_append(s.gender, schema.gender_categories, "gender", row);
  detail::one_hot_append(s.age_band, schema.age_band_categories, "age_band", row);
  detail::one_hot_append(s.geography, schema.geography_categories, "geography", row);
  detail::one_hot_append(s.education, schema.education_categories, "education", row);
  if (s.opinions.size() != schema.opinion_items.size())
    throw UnknownCategoryError("expected " + std::to_string(schema.opinion_items.size()) +
                               " opinion answers, got " + std::to_string(s.opinions.size()));
  const double mid = (1.0 + schema.opinion_scale) / 2.0;
  for (size_t i = 0; i < s.opinions.size(); ++i) {
    const int v = s.opinions[i];
    if (v < 1 || v > schema.opinion_scale)
      throw UnknownCategoryError("opinion item '" + schema.opinion_items[i] + "' value " +
                                 std::to_string(v) + " outside 1.." +
                                 std::to_string(schema.opinion_scale));
    if (schema.opinion_encoding == OpinionEncoding::Centered) {
      row.push_back(v - mid);
    } else {
      for (int c = 1; c <= schema.opinion_scale; ++c) row.push_back(c == v ? 1.0 : 0.0);
    }
  }
  return row;
}

/// The five model specifications from the experiment ladder.
enum class ModelKind { Baseline, SingleLike, AllLikes, Combined, AllLikesMin7 };

inline const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Baseline: return "baseline";
    case ModelKind::SingleLike: return "single_like";
    case ModelKind::AllLikes: return "all_likes";
    case ModelKind::Combined: return "combined";
    case ModelKind::AllLikesMin7: return "all_likes_min7";
  }
  return "?";
}

inline ModelKind model_kind_from_name(const std::string& s) {
  if (s == "baseline") return ModelKind::Baseline;
  if (s == "single_like") return ModelKind::SingleLike;
  if (s == "all_likes") return ModelKind::AllLikes;
  if (s == "combined") return ModelKind::Combined;
  if (s == "all_likes_min7") return ModelKind::AllLikesMin7;
  throw UnknownCategoryError("unknown model kind '" + s + "'");
}

struct FeatureMatrix {
  ModelKind kind = ModelKind::Baseline;
  std::vector<std::string> columns;
  std::vector<std::string> row_ids;  // respondent ids, row order
  Matrix m;
};

using LabelVector = std::vector<int>;  // vote intent as PartySpace indices

/// Builds the feature matrix and label vector for one model specification.
///
/// Respondents must already satisfy the sample filters for the kind (vote
/// intent present; at least one post like for the like-based kinds). The one
/// exception is AllLikesMin7, whose definition is the min-7 subset, so that
/// filter is applied here. Feature errors are rethrown with the offending
/// respondent_id attached.
inline std::pair<FeatureMatrix, LabelVector> build_matrix(const Dataset& ds, ModelKind kind,
                                                          const SurveySchema& schema) {
  const Dataset* source = &ds;
  Dataset filtered;
  if (kind == ModelKind::AllLikesMin7) {
    filtered = filter_dataset(ds, FilterRule::min_political_likes(7));
    source = &filtered;
  }

  FeatureMatrix fm;
  fm.kind = kind;

  const bool wants_survey = (kind == ModelKind::Baseline || kind == ModelKind::Combined);
  const bool wants_shares = (kind == ModelKind::AllLikes || kind == ModelKind::Combined ||
                             kind == ModelKind::AllLikesMin7);
  if (wants_survey) {
    auto names = survey_column_names(schema);
    fm.columns.insert(fm.columns.end(), names.begin(), names.end());
  }
  if (kind == ModelKind::SingleLike)
    for (const auto& p : source->party_space.parties) fm.columns.push_back("latest_like:" + p);
  if (wants_shares)
    for (const auto& p : source->party_space.parties) fm.columns.push_back("like_share:" + p);

  LabelVector labels;
  std::vector<double> values;
  values.reserve(source->respondents.size() * fm.columns.size());
  for (const auto& r : source->respondents) {
    const std::string where = "respondent " + r.respondent_id + ": ";
    try {
      if (!r.survey.vote_intent)
        throw UnknownCategoryError("vote intent missing (HasVoteIntent filter not applied)");
      const int label = source->party_space.index_of(*r.survey.vote_intent);
      if (label < 0) throw UnknownCategoryError("vote intent '" + *r.survey.vote_intent + "'");

      std::vector<double> row;
      if (wants_survey) {
        auto sv = encode_survey(r.survey, schema);
        row.insert(row.end(), sv.begin(), sv.end());
      }
      if (kind == ModelKind::SingleLike) {
        auto oh = single_latest_like(r, source->party_space);
        row.insert(row.end(), oh.begin(), oh.end());
      }
      if (wants_shares) {
        auto shares = normalize_likes(post_like_counts(r, source->party_space)).shares;
        row.insert(row.end(), shares.begin(), shares.end());
      }

      labels.push_back(label);
      fm.row_ids.push_back(r.respondent_id);
      values.insert(values.end(), row.begin(), row.end());
    } catch (const ZeroTotalError& e) {
      throw ZeroTotalError(where + e.what());
    } catch (const NoPoliticalLikesError& e) {
      throw NoPoliticalLikesError(where + e.what());
    } catch (const UnknownCategoryError& e) {
      throw UnknownCategoryError(where + e.what());
    }
  }

  fm.m.rows = fm.row_ids.size();
  fm.m.cols = fm.columns.size();
  fm.m.data = std::move(values);
  return {std::move(fm), std::move(labels)};
}

}  // namespace likevote
