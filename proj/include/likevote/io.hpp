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

// File formats live here: JSON Lines for datasets and the social layer, CSV
// for matrices, grids, polls and reports, JSON for fits and manifests. Field
// names and enum spellings are normative and documented in docs/FORMATS.md.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "likevote/forecast.hpp"
#include "likevote/nonresponse.hpp"
#include "likevote/propagation.hpp"
#include "likevote/rule.hpp"
#include "likevote/solver.hpp"
#include "likevote/synth.hpp"

namespace likevote {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Civil date <-> days since epoch (Gregorian, proleptic).

inline int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int64_t yoe = y - era * 400;
  const int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

inline std::string iso_from_days(int64_t z) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const int64_t doe = z - era * 146097;
  const int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = yoe + era * 400;
  const int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const int64_t mp = (5 * doy + 2) / 153;
  const int64_t d = doy - (153 * mp + 2) / 5 + 1;
  const int64_t m = mp + (mp < 10 ? 3 : -9);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04lld-%02lld-%02lld", static_cast<long long>(y + (m <= 2)),
                static_cast<long long>(m), static_cast<long long>(d));
  return buf;
}

inline int64_t days_from_iso(const std::string& iso) {
  int y = 0, m = 0, d = 0;
  if (std::sscanf(iso.c_str(), "%d-%d-%d", &y, &m, &d) != 3)
    throw InvalidConfigError("bad date '" + iso + "', expected YYYY-MM-DD");
  return days_from_civil(y, m, d);
}

// ---------------------------------------------------------------------------
// Enum spellings.

inline const char* like_kind_name(LikeKind k) {
  switch (k) {
    case LikeKind::PostLike: return "post_like";
    case LikeKind::CommentLike: return "comment_like";
    case LikeKind::TagMade: return "tag_made";
    case LikeKind::TagReceived: return "tag_received";
  }
  return "?";
}

inline LikeKind like_kind_from_name(const std::string& s) {
  if (s == "post_like") return LikeKind::PostLike;
  if (s == "comment_like") return LikeKind::CommentLike;
  if (s == "tag_made") return LikeKind::TagMade;
  if (s == "tag_received") return LikeKind::TagReceived;
  throw SchemaMismatchError("unknown like kind '" + s + "'");
}

inline const char* bloc_name(Bloc b) { return b == Bloc::Left ? "left" : "right"; }

inline Bloc bloc_from_name(const std::string& s) {
  if (s == "left") return Bloc::Left;
  if (s == "right") return Bloc::Right;
  throw InvalidConfigError("unknown bloc '" + s + "', expected left or right");
}

// ---------------------------------------------------------------------------
// Party space and survey schema.

inline json party_space_to_json(const PartySpace& ps) {
  json j;
  j["parties"] = ps.parties;
  json blocs = json::object();
  for (size_t i = 0; i < ps.parties.size(); ++i) blocs[ps.parties[i]] = bloc_name(ps.blocs[i]);
  j["blocs"] = blocs;
  return j;
}

inline PartySpace party_space_from_json(const json& j) {
  PartySpace ps;
  ps.parties = j.at("parties").get<std::vector<std::string>>();
  for (const auto& p : ps.parties)
    ps.blocs.push_back(bloc_from_name(j.at("blocs").at(p).get<std::string>()));
  ps.validate();
  return ps;
}

inline json survey_schema_to_json(const SurveySchema& s) {
  json j;
  j["gender"] = s.gender_categories;
  j["age_band"] = s.age_band_categories;
  j["geography"] = s.geography_categories;
  j["education"] = s.education_categories;
  j["opinion_items"] = s.opinion_items;
  j["opinion_scale"] = s.opinion_scale;
  j["opinion_encoding"] = s.opinion_encoding == OpinionEncoding::Centered ? "centered" : "onehot";
  return j;
}

inline SurveySchema survey_schema_from_json(const json& j) {
  SurveySchema s;
  s.gender_categories = j.at("gender").get<std::vector<std::string>>();
  s.age_band_categories = j.at("age_band").get<std::vector<std::string>>();
  s.geography_categories = j.at("geography").get<std::vector<std::string>>();
  s.education_categories = j.at("education").get<std::vector<std::string>>();
  s.opinion_items = j.at("opinion_items").get<std::vector<std::string>>();
  s.opinion_scale = j.at("opinion_scale").get<int>();
  const std::string enc = j.value("opinion_encoding", "centered");
  if (enc == "centered") {
    s.opinion_encoding = OpinionEncoding::Centered;
  } else if (enc == "onehot") {
    s.opinion_encoding = OpinionEncoding::OneHot;
  } else {
    throw InvalidConfigError("unknown opinion_encoding '" + enc + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Respondents and datasets (JSON Lines; first line is a small header object).

inline json respondent_to_json(const Respondent& r) {
  json j;
  j["respondent_id"] = r.respondent_id;
  json survey;
  survey["gender"] = r.survey.gender;
  survey["age_band"] = r.survey.age_band;
  survey["geography"] = r.survey.geography;
  survey["education"] = r.survey.education;
  survey["opinions"] = r.survey.opinions;
  if (r.survey.vote_intent) {
    survey["vote_intent"] = *r.survey.vote_intent;
  } else {
    survey["vote_intent"] = nullptr;
  }
  j["survey"] = survey;
  json history = json::array();
  for (const auto& ev : r.like_history) {
    json e;
    e["party"] = ev.party;
    e["timestamp"] = ev.timestamp;
    e["kind"] = like_kind_name(ev.kind);
    history.push_back(e);
  }
  j["like_history"] = history;
  return j;
}

inline Respondent respondent_from_json(const json& j) {
  Respondent r;
  r.respondent_id = j.at("respondent_id").get<std::string>();
  const json& s = j.at("survey");
  r.survey.gender = s.at("gender").get<std::string>();
  r.survey.age_band = s.at("age_band").get<std::string>();
  r.survey.geography = s.at("geography").get<std::string>();
  r.survey.education = s.at("education").get<std::string>();
  r.survey.opinions = s.at("opinions").get<std::vector<int>>();
  if (s.contains("vote_intent") && !s.at("vote_intent").is_null())
    r.survey.vote_intent = s.at("vote_intent").get<std::string>();
  for (const auto& e : j.at("like_history")) {
    LikeEvent ev;
    ev.party = e.at("party").get<std::string>();
    ev.timestamp = e.at("timestamp").get<int64_t>();
    ev.kind = like_kind_from_name(e.at("kind").get<std::string>());
    r.like_history.push_back(ev);
  }
  return r;
}

inline void save_dataset(const std::string& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  json header;
  header["likevote_dataset"] = 1;
  header["window_start"] = ds.window_start;
  header["window_end"] = ds.window_end;
  out << header.dump() << "\n";
  for (const auto& r : ds.respondents) out << respondent_to_json(r).dump() << "\n";
}

inline Dataset load_dataset(const std::string& path, const PartySpace& ps) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Dataset ds;
  ds.party_space = ps;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (!saw_header && j.contains("likevote_dataset")) {
      ds.window_start = j.at("window_start").get<int64_t>();
      ds.window_end = j.at("window_end").get<int64_t>();
      saw_header = true;
      continue;
    }
    ds.respondents.push_back(respondent_from_json(j));
  }
  if (!saw_header) throw SchemaMismatchError(path + ": missing dataset header line");
  ds.validate();
  return ds;
}

// ---------------------------------------------------------------------------
// Social layer (JSON Lines).

inline void save_media_posts(const std::string& path, const std::vector<MediaPost>& posts) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (const auto& p : posts) {
    json j;
    j["post_id"] = p.post_id;
    j["likers"] = p.liker_ids;
    j["commenters"] = p.commenter_ids;
    out << j.dump() << "\n";
  }
}

inline std::vector<MediaPost> load_media_posts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<MediaPost> posts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    MediaPost p;
    p.post_id = j.at("post_id").get<std::string>();
    p.liker_ids = j.at("likers").get<std::vector<std::string>>();
    p.commenter_ids = j.at("commenters").get<std::vector<std::string>>();
    posts.push_back(std::move(p));
  }
  return posts;
}

inline void save_tags(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& tags) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (const auto& [tagger, tagged] : tags) {
    json j;
    j["tagger"] = tagger;
    j["tagged"] = tagged;
    out << j.dump() << "\n";
  }
}

inline std::vector<std::pair<std::string, std::string>> load_tags(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::pair<std::string, std::string>> tags;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    tags.emplace_back(j.at("tagger").get<std::string>(), j.at("tagged").get<std::string>());
  }
  return tags;
}

inline void save_comment_likes(const std::string& path, const std::vector<CommentLikeEdge>& edges) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (const auto& e : edges) {
    json j;
    j["liker"] = e.liker_id;
    j["author"] = e.author_id;
    j["post_id"] = e.post_id;
    j["page"] = e.page == PageKind::Political ? "political" : "media";
    out << j.dump() << "\n";
  }
}

inline std::vector<CommentLikeEdge> load_comment_likes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<CommentLikeEdge> edges;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    CommentLikeEdge e;
    e.liker_id = j.at("liker").get<std::string>();
    e.author_id = j.at("author").get<std::string>();
    e.post_id = j.at("post_id").get<std::string>();
    const std::string page = j.at("page").get<std::string>();
    if (page == "political") {
      e.page = PageKind::Political;
    } else if (page == "media") {
      e.page = PageKind::Media;
    } else {
      throw SchemaMismatchError("unknown page kind '" + page + "'");
    }
    edges.push_back(std::move(e));
  }
  return edges;
}

// ---------------------------------------------------------------------------
// CSV.

namespace detail {

inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline void save_matrix_csv(const std::string& path, const FeatureMatrix& fx,
                            const LabelVector& y, const PartySpace& ps) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "respondent_id,label";
  for (const auto& c : fx.columns) out << "," << c;
  out << "\n";
  for (size_t i = 0; i < fx.m.rows; ++i) {
    out << fx.row_ids[i] << "," << ps.parties[y[i]];
    for (size_t j = 0; j < fx.m.cols; ++j) out << "," << detail::fmt_double(fx.m.at(i, j));
    out << "\n";
  }
}

inline void save_grid_csv(const std::string& path, const std::vector<GridCell>& cells) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "min_likes,plc,n_included,accuracy,ci95\n";
  for (const auto& c : cells) {
    out << c.min_likes << "," << detail::fmt_double(c.plc) << "," << c.n_included << ","
        << detail::fmt_double(c.accuracy) << "," << detail::fmt_double(c.ci_95) << "\n";
  }
}

/// Accuracy surface as a plot-friendly matrix: one row per min_likes, one
/// column per party like cap.
inline void save_grid_matrix_csv(const std::string& path, const std::vector<GridCell>& cells,
                                 const std::vector<int>& min_likes_list,
                                 const std::vector<double>& plc_list) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "min_likes";
  for (double p : plc_list) out << "," << detail::fmt_double(p);
  out << "\n";
  size_t idx = 0;
  for (int ml : min_likes_list) {
    out << ml;
    for (size_t j = 0; j < plc_list.size(); ++j) {
      out << "," << detail::fmt_double(cells[idx].accuracy);
      ++idx;
    }
    out << "\n";
  }
}

inline void save_polls_csv(const std::string& path, const std::vector<PollObservation>& polls,
                           const PartySpace& ps) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "date";
  for (const auto& p : ps.parties) out << "," << p;
  out << "\n";
  for (const auto& poll : polls) {
    out << iso_from_days(poll.date);
    for (double s : poll.shares.shares) out << "," << detail::fmt_double(s);
    out << "\n";
  }
}

inline std::vector<PollObservation> load_polls_csv(const std::string& path,
                                                   const PartySpace& ps) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw SchemaMismatchError(path + ": empty polls file");
  const auto header = detail::split_csv_line(line);
  if (header.size() != static_cast<size_t>(kNumParties) + 1 || header[0] != "date")
    throw SchemaMismatchError(path + ": expected header date,<9 parties>");
  for (int i = 0; i < kNumParties; ++i)
    if (ps.index_of(header[i + 1]) != i)
      throw SchemaMismatchError(path + ": poll columns must match party space order");
  std::vector<PollObservation> polls;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != static_cast<size_t>(kNumParties) + 1)
      throw SchemaMismatchError(path + ": bad poll row");
    PollObservation poll;
    poll.date = days_from_iso(f[0]);
    for (int i = 0; i < kNumParties; ++i) poll.shares.shares[i] = std::stod(f[i + 1]);
    polls.push_back(poll);
  }
  return polls;
}

inline void save_shares_csv(const std::string& path, const ShareVector& shares,
                            const PartySpace& ps) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "party,share\n";
  for (int i = 0; i < kNumParties; ++i)
    out << ps.parties[i] << "," << detail::fmt_double(shares.shares[i]) << "\n";
}

inline ShareVector load_shares_csv(const std::string& path, const PartySpace& ps) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  ShareVector out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 2) throw SchemaMismatchError(path + ": bad share row");
    const int idx = ps.index_of(f[0]);
    if (idx < 0) throw SchemaMismatchError(path + ": unknown party '" + f[0] + "'");
    out.shares[idx] = std::stod(f[1]);
  }
  return out;
}

inline void save_skew_csv(const std::string& path, const std::vector<SkewReport>& reports) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "feature,x2_mean,q025,q975,null_q975,skew\n";
  for (const auto& r : reports) {
    out << r.feature << "," << detail::fmt_double(r.x2_mean) << "," << detail::fmt_double(r.q025)
        << "," << detail::fmt_double(r.q975) << "," << detail::fmt_double(r.null_q975) << ","
        << skew_grade_name(r.skew) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Fit results, CV results, reports (JSON with stable key order).

inline json fit_result_to_json(const FitResult& fr) {
  json j;
  j["lambda"] = fr.lambda_used;
  j["n_classes"] = fr.n_classes;
  j["columns"] = fr.columns;
  j["intercepts"] = fr.intercepts;
  json rows = json::array();
  for (int k = 0; k < fr.n_classes; ++k) {
    json row = json::array();
    for (size_t c = 0; c < fr.coefficients.cols; ++c) row.push_back(fr.coefficients.at(k, c));
    rows.push_back(row);
  }
  j["coefficients"] = rows;
  j["feature_means"] = fr.feature_means;
  j["feature_scales"] = fr.feature_scales;
  j["included"] = fr.included;
  j["total"] = fr.total;
  j["converged"] = fr.converged;
  j["objective_trace"] = fr.objective_trace;
  return j;
}

inline FitResult fit_result_from_json(const json& j) {
  FitResult fr;
  fr.lambda_used = j.at("lambda").get<double>();
  fr.n_classes = j.at("n_classes").get<int>();
  fr.columns = j.at("columns").get<std::vector<std::string>>();
  fr.intercepts = j.at("intercepts").get<std::vector<double>>();
  const auto& rows = j.at("coefficients");
  fr.coefficients = Matrix(fr.n_classes, fr.columns.size());
  for (int k = 0; k < fr.n_classes; ++k)
    for (size_t c = 0; c < fr.columns.size(); ++c)
      fr.coefficients.at(k, c) = rows.at(k).at(c).get<double>();
  fr.feature_means = j.at("feature_means").get<std::vector<double>>();
  fr.feature_scales = j.at("feature_scales").get<std::vector<double>>();
  fr.included = j.at("included").get<int64_t>();
  fr.total = j.at("total").get<int64_t>();
  fr.converged = j.value("converged", false);
  fr.objective_trace = j.value("objective_trace", std::vector<double>{});
  return fr;
}

inline json cv_result_to_json(const CvResult& cv) {
  json j;
  j["grid"] = cv.grid;
  j["fold_accuracies"] = cv.fold_accuracies;
  j["mean_accuracy"] = cv.mean_accuracy;
  j["chosen_lambda"] = cv.chosen_lambda;
  j["ci_95"] = cv.ci_95;
  return j;
}

/// One-column text rendering of an evaluation report.
inline std::string render_eval_report(const EvalReport& r, const std::string& title) {
  std::ostringstream out;
  auto line = [&](const char* name, double v) {
    out << name;
    for (int i = static_cast<int>(std::string(name).size()); i < 24; ++i) out << ' ';
    if (std::isnan(v)) {
      out << "-\n";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", v);
      out << buf << "\n";
    }
  };
  out << title << "\n";
  out << "Sample size";
  for (int i = 11; i < 24; ++i) out << ' ';
  out << r.n << "\n";
  line("+/- 95% CI", r.ci_95);
  line("Precision", r.macro_precision);
  line("Recall", r.macro_recall);
  line("Accuracy", r.accuracy);
  line("Left/Right Acc.", r.left_right_accuracy);
  line("AUC (macro OVR)", r.auc_macro);
  line("AUC (left/right)", r.left_right_auc);
  return out.str();
}

inline json eval_report_to_json(const EvalReport& r) {
  json j;
  j["n"] = r.n;
  j["accuracy"] = r.accuracy;
  j["macro_precision"] = r.macro_precision;
  j["macro_recall"] = r.macro_recall;
  j["auc_macro_ovr"] = r.auc_macro;
  j["left_right_accuracy"] = r.left_right_accuracy;
  j["left_right_auc"] = std::isnan(r.left_right_auc) ? json(nullptr) : json(r.left_right_auc);
  j["ci_95"] = r.ci_95;
  return j;
}

// ---------------------------------------------------------------------------
// Application config.

struct SolverSettings {
  std::vector<double> lambda_grid{0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 10.0, 15.0};
  int folds = 10;
  int max_iters = 2000;
  double tol = 1e-8;
};

struct AppConfig {
  PartySpace party_space;
  SurveySchema survey;
  GenConfig gen;
  SolverSettings solver;
  SkewThresholds skew;
};

inline AppConfig default_config() {
  AppConfig cfg;
  for (int i = 1; i <= kNumParties; ++i) cfg.party_space.parties.push_back("P" + std::to_string(i));
  // Four left-bloc parties, five right-bloc; synthetic labels throughout.
  for (int i = 0; i < kNumParties; ++i)
    cfg.party_space.blocs.push_back(i < 4 ? Bloc::Left : Bloc::Right);
  cfg.survey.gender_categories = {"male", "female"};
  cfg.survey.age_band_categories = {"18-34", "35-53", "54-74"};
  cfg.survey.geography_categories = {"east", "west"};
  cfg.survey.education_categories = {"primary", "secondary", "vocational", "bachelor", "graduate"};
  for (int i = 1; i <= 15; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "opinion_%02d", i);
    cfg.survey.opinion_items.push_back(buf);
  }
  return cfg;
}

inline json config_to_json(const AppConfig& cfg) {
  json j;
  j["party_space"] = party_space_to_json(cfg.party_space);
  j["survey"] = survey_schema_to_json(cfg.survey);
  json gen;
  gen["n_respondents"] = cfg.gen.n_respondents;
  gen["seed"] = cfg.gen.seed;
  gen["alignment"] = cfg.gen.alignment;
  gen["likes_log_mu"] = cfg.gen.likes_log_mu;
  gen["likes_log_sigma"] = cfg.gen.likes_log_sigma;
  gen["survey_signal"] = cfg.gen.survey_signal;
  gen["age_skew"] = cfg.gen.age_skew;
  gen["party_priors"] = cfg.gen.party_priors;
  gen["p_no_vote"] = cfg.gen.p_no_vote;
  gen["p_no_likes"] = cfg.gen.p_no_likes;
  gen["p_post_like"] = cfg.gen.p_post_like;
  gen["p_comment_like"] = cfg.gen.p_comment_like;
  gen["p_tag_made"] = cfg.gen.p_tag_made;
  gen["p_tag_received"] = cfg.gen.p_tag_received;
  gen["window_start"] = cfg.gen.window_start;
  gen["window_end"] = cfg.gen.window_end;
  gen["n_media_posts"] = cfg.gen.n_media_posts;
  gen["likers_per_post"] = cfg.gen.likers_per_post;
  gen["commenters_per_post"] = cfg.gen.commenters_per_post;
  gen["political_fraction"] = cfg.gen.political_fraction;
  gen["n_tags"] = cfg.gen.n_tags;
  gen["n_comment_like_edges"] = cfg.gen.n_comment_like_edges;
  gen["poll_days_before_end"] = {cfg.gen.poll_days_before_end[0], cfg.gen.poll_days_before_end[1]};
  j["generator"] = gen;
  json solver;
  solver["lambda_grid"] = cfg.solver.lambda_grid;
  solver["folds"] = cfg.solver.folds;
  solver["max_iters"] = cfg.solver.max_iters;
  solver["tol"] = cfg.solver.tol;
  j["solver"] = solver;
  json skew;
  skew["small"] = cfg.skew.small;
  skew["medium"] = cfg.skew.medium;
  skew["large"] = cfg.skew.large;
  j["skew_thresholds"] = skew;
  return j;
}

inline AppConfig config_from_json(const json& j) {
  AppConfig cfg = default_config();
  if (j.contains("party_space")) cfg.party_space = party_space_from_json(j.at("party_space"));
  if (j.contains("survey")) cfg.survey = survey_schema_from_json(j.at("survey"));
  if (j.contains("generator")) {
    const json& g = j.at("generator");
    GenConfig& gen = cfg.gen;
    gen.n_respondents = g.value("n_respondents", gen.n_respondents);
    gen.seed = g.value("seed", gen.seed);
    gen.alignment = g.value("alignment", gen.alignment);
    gen.likes_log_mu = g.value("likes_log_mu", gen.likes_log_mu);
    gen.likes_log_sigma = g.value("likes_log_sigma", gen.likes_log_sigma);
    gen.survey_signal = g.value("survey_signal", gen.survey_signal);
    gen.age_skew = g.value("age_skew", gen.age_skew);
    if (g.contains("party_priors")) {
      const auto v = g.at("party_priors").get<std::vector<double>>();
      if (v.size() != kNumParties) throw InvalidConfigError("party_priors needs 9 entries");
      std::copy(v.begin(), v.end(), gen.party_priors.begin());
    }
    gen.p_no_vote = g.value("p_no_vote", gen.p_no_vote);
    gen.p_no_likes = g.value("p_no_likes", gen.p_no_likes);
    gen.p_post_like = g.value("p_post_like", gen.p_post_like);
    gen.p_comment_like = g.value("p_comment_like", gen.p_comment_like);
    gen.p_tag_made = g.value("p_tag_made", gen.p_tag_made);
    gen.p_tag_received = g.value("p_tag_received", gen.p_tag_received);
    gen.window_start = g.value("window_start", gen.window_start);
    gen.window_end = g.value("window_end", gen.window_end);
    gen.n_media_posts = g.value("n_media_posts", gen.n_media_posts);
    gen.likers_per_post = g.value("likers_per_post", gen.likers_per_post);
    gen.commenters_per_post = g.value("commenters_per_post", gen.commenters_per_post);
    gen.political_fraction = g.value("political_fraction", gen.political_fraction);
    gen.n_tags = g.value("n_tags", gen.n_tags);
    gen.n_comment_like_edges = g.value("n_comment_like_edges", gen.n_comment_like_edges);
    if (g.contains("poll_days_before_end")) {
      const auto v = g.at("poll_days_before_end").get<std::vector<int>>();
      if (v.size() != 2) throw InvalidConfigError("poll_days_before_end needs 2 entries");
      gen.poll_days_before_end[0] = v[0];
      gen.poll_days_before_end[1] = v[1];
    }
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    cfg.solver.lambda_grid = s.value("lambda_grid", cfg.solver.lambda_grid);
    cfg.solver.folds = s.value("folds", cfg.solver.folds);
    cfg.solver.max_iters = s.value("max_iters", cfg.solver.max_iters);
    cfg.solver.tol = s.value("tol", cfg.solver.tol);
  }
  if (j.contains("skew_thresholds")) {
    const json& s = j.at("skew_thresholds");
    cfg.skew.small = s.value("small", cfg.skew.small);
    cfg.skew.medium = s.value("medium", cfg.skew.medium);
    cfg.skew.large = s.value("large", cfg.skew.large);
  }
  return cfg;
}

inline AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfigError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidConfigError("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

// ---------------------------------------------------------------------------
// Run manifest: enough to rerun the command bit-identically. The timestamp
// field stays null unless the caller opts into wall-clock stamping, keeping
// same-seed reruns byte-identical.

struct RunManifest {
  std::string subcommand;
  std::string config_path;  // empty = built-in defaults
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  uint64_t seed = 0;
  std::string timestamp;  // ISO-8601 when stamping is requested, else empty
};

inline json manifest_to_json(const RunManifest& m) {
  json j;
  j["tool"] = "likevote";
  j["version"] = kVersion;
  j["subcommand"] = m.subcommand;
  j["config"] = m.config_path.empty() ? json(nullptr) : json(m.config_path);
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["seed"] = m.seed;
  j["timestamp"] = m.timestamp.empty() ? json(nullptr) : json(m.timestamp);
  return j;
}

inline void write_manifest(const std::string& dir, const RunManifest& m) {
  const std::string path = dir + "/manifest.json";
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << manifest_to_json(m).dump(2) << "\n";
}

}  // namespace likevote
