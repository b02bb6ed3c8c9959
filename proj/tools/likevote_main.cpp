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

// likevote: batch pipeline from synthetic respondents to fitted models,
// accuracy grids, skew reports and aggregate forecasts. One binary,
// subcommand style, file-based handoff between stages.

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <likevote/replicate.hpp>

namespace fs = std::filesystem;
using namespace likevote;

namespace {

struct Common {
  std::string config_path;
  std::string output = ".";
  uint64_t seed = 1;
  int threads = 1;
  bool stamp = false;
};

AppConfig resolve_config(const Common& c) {
  return c.config_path.empty() ? default_config() : load_config(c.config_path);
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void finish(const Common& c, RunManifest m) {
  if (c.stamp) m.timestamp = now_iso8601();
  m.config_path = c.config_path;
  m.seed = c.seed;
  write_manifest(c.output, m);
}

void add_common(CLI::App* cmd, Common& c, bool with_seed = true) {
  cmd->add_option("--config", c.config_path, "JSON config file (defaults built in)");
  cmd->add_option("--output", c.output, "output directory")->required();
  if (with_seed) cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--threads", c.threads, "worker threads for parallel stages");
  cmd->add_flag("--stamp", c.stamp, "record wall-clock time in the manifest (breaks "
                                    "bit-identical reruns)");
}

void ensure_outdir(const Common& c) { fs::create_directories(c.output); }

std::vector<int> labels_from_csv(const std::string& path, const PartySpace& ps) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw SchemaMismatchError(path + ": empty file");
  if (detail::split_csv_line(line).back() != "party")
    throw SchemaMismatchError(path + ": expected a 'party' header column");
  std::vector<int> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::string id = detail::split_csv_line(line).back();
    const int idx = ps.index_of(id);
    if (idx < 0) throw SchemaMismatchError(path + ": unknown party '" + id + "'");
    out.push_back(idx);
  }
  return out;
}

// ---------------------------------------------------------------------------

int run_synth(const Common& c, int n_override, double alignment, double survey_signal,
              double age_skew) {
  AppConfig cfg = resolve_config(c);
  cfg.gen.seed = c.seed;
  if (n_override > 0) cfg.gen.n_respondents = n_override;
  if (alignment >= 0) cfg.gen.alignment = alignment;
  if (survey_signal >= 0) cfg.gen.survey_signal = survey_signal;
  if (age_skew >= 0) cfg.gen.age_skew = age_skew;

  const SynthBundle bundle = generate_bundle(cfg.gen, cfg.party_space, cfg.survey);
  ensure_outdir(c);
  save_dataset(c.output + "/dataset.jsonl", bundle.dataset);
  save_media_posts(c.output + "/media_posts.jsonl", bundle.media_posts);
  save_tags(c.output + "/tags.jsonl", bundle.tags);
  save_comment_likes(c.output + "/comment_likes.jsonl", bundle.comment_likes);
  save_polls_csv(c.output + "/polls.csv",
                 {bundle.polls[0], bundle.polls[1]}, cfg.party_space);
  save_shares_csv(c.output + "/actual.csv", bundle.true_shares, cfg.party_space);

  RunManifest m;
  m.subcommand = "synth";
  m.outputs = {"dataset.jsonl", "media_posts.jsonl", "tags.jsonl", "comment_likes.jsonl",
               "polls.csv", "actual.csv"};
  finish(c, m);
  std::cout << "wrote " << bundle.dataset.respondents.size() << " respondents to " << c.output
            << "\n";
  return 0;
}

int run_features(const Common& c, const std::string& input, const std::string& model) {
  const AppConfig cfg = resolve_config(c);
  const ModelKind kind = model_kind_from_name(model);
  Dataset ds = load_dataset(input, cfg.party_space);
  ds = filter_dataset(ds, FilterRule::has_vote_intent());
  if (kind != ModelKind::Baseline) ds = filter_dataset(ds, FilterRule::min_political_likes(1));
  const auto [fx, y] = build_matrix(ds, kind, cfg.survey);
  ensure_outdir(c);
  save_matrix_csv(c.output + "/matrix.csv", fx, y, cfg.party_space);

  RunManifest m;
  m.subcommand = "features";
  m.inputs = {input};
  m.outputs = {"matrix.csv"};
  finish(c, m);
  std::cout << "wrote " << fx.m.rows << " x " << fx.m.cols << " matrix for model " << model
            << "\n";
  return 0;
}

int run_fit(const Common& c, const std::string& input, const std::string& model, double lambda,
            std::vector<double> lambda_grid, int folds) {
  const AppConfig cfg = resolve_config(c);
  const ModelKind kind = model_kind_from_name(model);
  Dataset ds = load_dataset(input, cfg.party_space);
  ds = filter_dataset(ds, FilterRule::has_vote_intent());
  if (kind != ModelKind::Baseline) ds = filter_dataset(ds, FilterRule::min_political_likes(1));
  const auto [fx, y] = build_matrix(ds, kind, cfg.survey);

  FitConfig base;
  base.max_iters = cfg.solver.max_iters;
  base.tol = cfg.solver.tol;
  base.n_classes = kNumParties;

  ensure_outdir(c);
  RunManifest m;
  m.subcommand = "fit";
  m.inputs = {input};

  double chosen = lambda;
  if (lambda < 0) {  // cross-validated selection
    if (lambda_grid.empty()) lambda_grid = cfg.solver.lambda_grid;
    if (folds <= 0) folds = cfg.solver.folds;
    const CvResult cv = cross_validate(fx, y, lambda_grid, folds, c.seed, base, c.threads);
    chosen = cv.chosen_lambda;
    std::ofstream out(c.output + "/cv.json");
    out << cv_result_to_json(cv).dump(2) << "\n";
    m.outputs.push_back("cv.json");
  }
  FitConfig final_cfg = base;
  final_cfg.lambda = chosen;
  const FitResult fr = fit(fx, y, final_cfg);
  json j = fit_result_to_json(fr);
  j["model"] = model_kind_name(kind);
  std::ofstream out(c.output + "/fit.json");
  out << j.dump(2) << "\n";
  m.outputs.push_back("fit.json");
  finish(c, m);
  std::cout << "fit " << model << " at lambda " << chosen << ": " << fr.included << "/"
            << fr.total << " coefficients\n";
  return 0;
}

int run_eval(const Common& c, const std::string& input, const std::string& fit_path,
             const std::string& pred_path, const std::string& gold_path) {
  const AppConfig cfg = resolve_config(c);
  ensure_outdir(c);
  RunManifest m;
  m.subcommand = "eval";

  EvalReport report;
  std::string title;
  if (!fit_path.empty()) {
    std::ifstream in(fit_path);
    if (!in) throw Error("cannot open " + fit_path);
    json j;
    in >> j;
    const FitResult fr = fit_result_from_json(j);
    const ModelKind kind = model_kind_from_name(j.at("model").get<std::string>());
    Dataset ds = load_dataset(input, cfg.party_space);
    ds = filter_dataset(ds, FilterRule::has_vote_intent());
    if (kind != ModelKind::Baseline) ds = filter_dataset(ds, FilterRule::min_political_likes(1));
    const auto [fx, y] = build_matrix(ds, kind, cfg.survey);
    const Matrix probs = predict_proba(fr, fx);
    report = evaluate(probs, y, cfg.party_space);
    title = std::string("model ") + model_kind_name(kind);

    std::ofstream pred_out(c.output + "/predictions.csv");
    pred_out << "respondent_id,gold,pred\n";
    for (size_t i = 0; i < probs.rows; ++i) {
      int best = 0;
      for (int k = 1; k < kNumParties; ++k)
        if (probs.at(i, k) > probs.at(i, best)) best = k;
      pred_out << fx.row_ids[i] << "," << cfg.party_space.parties[y[i]] << ","
               << cfg.party_space.parties[best] << "\n";
    }
    m.inputs = {input, fit_path};
    m.outputs.push_back("predictions.csv");
  } else {
    if (pred_path.empty() || gold_path.empty())
      throw InvalidConfigError("eval needs either --fit with --input, or --pred with --gold");
    const auto pred = labels_from_csv(pred_path, cfg.party_space);
    const auto gold = labels_from_csv(gold_path, cfg.party_space);
    report.accuracy = accuracy(pred, gold);
    const auto pr = macro_precision_recall(pred, gold, kNumParties);
    report.macro_precision = pr.first;
    report.macro_recall = pr.second;
    report.auc_macro = std::nan("");  // no scores, no ROC
    report.left_right_accuracy = left_right_accuracy(pred, gold, cfg.party_space);
    report.left_right_auc = std::nan("");
    report.n = static_cast<int64_t>(pred.size());
    title = "label predictions";
    m.inputs = {pred_path, gold_path};
  }

  std::ofstream jout(c.output + "/report.json");
  jout << eval_report_to_json(report).dump(2) << "\n";
  const std::string text = render_eval_report(report, title);
  std::ofstream tout(c.output + "/report.txt");
  tout << text;
  std::cout << text;
  m.outputs.push_back("report.json");
  m.outputs.push_back("report.txt");
  finish(c, m);
  return 0;
}

int run_grid(const Common& c, const std::string& input, std::vector<int> min_likes,
             std::vector<double> plc) {
  const AppConfig cfg = resolve_config(c);
  Dataset ds = load_dataset(input, cfg.party_space);
  ds = filter_dataset(ds, FilterRule::has_vote_intent());
  ds = filter_dataset(ds, FilterRule::min_political_likes(1));
  if (min_likes.empty()) min_likes = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  if (plc.empty()) plc = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const auto cells = sweep_grid(ds, min_likes, plc);
  ensure_outdir(c);
  save_grid_csv(c.output + "/grid.csv", cells);
  save_grid_matrix_csv(c.output + "/grid_matrix.csv", cells, min_likes, plc);

  RunManifest m;
  m.subcommand = "grid";
  m.inputs = {input};
  m.outputs = {"grid.csv", "grid_matrix.csv"};
  finish(c, m);
  std::cout << "wrote " << cells.size() << " grid cells\n";
  return 0;
}

int run_propagate(const Common& c, const std::string& input, const std::string& posts_path,
                  const std::string& tags_path, const std::string& comment_likes_path) {
  const AppConfig cfg = resolve_config(c);
  const Dataset ds = load_dataset(input, cfg.party_space);

  LikeVectorDb db;
  for (const auto& r : ds.respondents) {
    const auto counts = post_like_counts(r, cfg.party_space);
    if (counts.total() > 0) db[r.respondent_id] = normalize_likes(counts);
  }

  const auto posts = load_media_posts(posts_path);
  std::set<std::string> selected;
  try {
    selected = select_political(posts, db);
  } catch (const TooFewPostsError&) {
    // Without enough scorable media posts only politician pages propagate.
  }

  PropagationState state;
  for (const auto& [tagger, tagged] : load_tags(tags_path)) apply_tag(tagger, tagged, db, state);
  for (const auto& edge : load_comment_likes(comment_likes_path))
    apply_comment_like(edge, selected, db, state);

  ensure_outdir(c);
  {
    std::ofstream out(c.output + "/propagation.jsonl");
    for (const auto& [user, pv] : state.by_user) {
      json j;
      j["respondent_id"] = user;
      j["values"] = pv.values;
      out << j.dump() << "\n";
    }
  }
  {
    std::ofstream out(c.output + "/selected_posts.txt");
    for (const auto& id : selected) out << id << "\n";
  }

  RunManifest m;
  m.subcommand = "propagate";
  m.inputs = {input, posts_path, tags_path, comment_likes_path};
  m.outputs = {"propagation.jsonl", "selected_posts.txt"};
  finish(c, m);
  std::cout << "propagated vectors for " << state.by_user.size() << " users; " << selected.size()
            << " posts selected as political\n";
  return 0;
}

int run_nonresponse(const Common& c, const std::string& input, const std::string& sub_path,
                    std::vector<std::string> features, int n_perm) {
  const AppConfig cfg = resolve_config(c);
  const Dataset full = load_dataset(input, cfg.party_space);
  const Dataset sub = load_dataset(sub_path, cfg.party_space);
  if (features.empty()) {
    features = {"gender", "age_band", "geography", "education", "party_choice"};
    for (const auto& item : cfg.survey.opinion_items) features.push_back("opinion:" + item);
  }
  std::vector<SkewReport> reports;
  for (size_t i = 0; i < features.size(); ++i) {
    reports.push_back(permutation_skew(full, sub, features[i], n_perm,
                                       derive_seed(c.seed, i), cfg.skew, &cfg.survey,
                                       c.threads));
  }
  ensure_outdir(c);
  save_skew_csv(c.output + "/skew.csv", reports);

  RunManifest m;
  m.subcommand = "nonresponse";
  m.inputs = {input, sub_path};
  m.outputs = {"skew.csv"};
  finish(c, m);
  for (const auto& r : reports)
    std::cout << r.feature << ": " << skew_grade_name(r.skew) << " (x2 mean " << r.x2_mean
              << ", null q975 " << r.null_q975 << ")\n";
  return 0;
}

int run_forecast(const Common& c, const std::string& input, const std::string& polls_path,
                 const std::string& actual_path) {
  const AppConfig cfg = resolve_config(c);
  const Dataset ds = load_dataset(input, cfg.party_space);
  const auto polls = load_polls_csv(polls_path, cfg.party_space);
  if (polls.size() != 2)
    throw InvalidConfigError("forecast expects exactly 2 polls, got " +
                             std::to_string(polls.size()));

  const std::array<PollObservation, 2> poll_pair = {polls[0], polls[1]};
  const std::array<ShareVector, 2> fb = {
      window_count_shares(ds, polls[0].date * 86400 + 86399),
      window_count_shares(ds, polls[1].date * 86400 + 86399)};
  const WeightFitResult wf = fit_weights(fb, poll_pair);

  std::vector<PartyCountVector> users;
  for (const auto& r : ds.respondents) {
    const auto counts = post_like_counts(r, cfg.party_space);
    if (counts.total() > 0) users.push_back(counts);
  }
  const ShareVector raw = raw_count_shares(users);
  const ShareVector weighted = forecast(users, wf.weights);

  ensure_outdir(c);
  {
    std::ofstream out(c.output + "/forecast.csv");
    out << "party,raw_share,weighted_share\n";
    for (int i = 0; i < kNumParties; ++i)
      out << cfg.party_space.parties[i] << "," << detail::fmt_double(raw.shares[i]) << ","
          << detail::fmt_double(weighted.shares[i]) << "\n";
  }
  json summary;
  summary["weights"] = wf.weights;
  summary["rss"] = wf.objective;
  summary["degenerate"] = wf.degenerate;
  summary["n_users"] = users.size();
  if (!actual_path.empty()) {
    const ShareVector actual = load_shares_csv(actual_path, cfg.party_space);
    summary["mae_raw"] = mae(raw, actual);
    summary["mae_weighted"] = mae(weighted, actual);
  }
  {
    std::ofstream out(c.output + "/forecast_summary.json");
    out << summary.dump(2) << "\n";
  }

  RunManifest m;
  m.subcommand = "forecast";
  m.inputs = {input, polls_path};
  if (!actual_path.empty()) m.inputs.push_back(actual_path);
  m.outputs = {"forecast.csv", "forecast_summary.json"};
  finish(c, m);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int run_replicate(const Common& c, const std::string& input, int n_override, double alignment,
                  double survey_signal, std::vector<double> lambda_grid, int folds) {
  AppConfig cfg = resolve_config(c);
  cfg.gen.seed = c.seed;
  if (n_override > 0) cfg.gen.n_respondents = n_override;
  if (alignment >= 0) cfg.gen.alignment = alignment;
  if (survey_signal >= 0) cfg.gen.survey_signal = survey_signal;
  if (!lambda_grid.empty()) cfg.solver.lambda_grid = lambda_grid;
  if (folds > 0) cfg.solver.folds = folds;

  Dataset ds = input.empty() ? generate(cfg.gen, cfg.party_space, cfg.survey)
                             : load_dataset(input, cfg.party_space);
  ds = filter_dataset(ds, FilterRule::has_vote_intent());
  ds = filter_dataset(ds, FilterRule::min_political_likes(1));

  const ReplicateResult res = replicate(ds, cfg, c.seed, c.threads);
  const std::string table = render_comparison_table(res);

  ensure_outdir(c);
  {
    std::ofstream out(c.output + "/table.txt");
    out << table;
  }
  save_comparison_csv(c.output + "/table.csv", res);

  RunManifest m;
  m.subcommand = "replicate";
  if (!input.empty()) m.inputs = {input};
  m.outputs = {"table.txt", "table.csv"};
  finish(c, m);
  std::cout << table;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"political-like voting pipeline"};
  app.require_subcommand(1);

  Common c_synth, c_features, c_fit, c_eval, c_grid, c_prop, c_nonresp, c_forecast, c_repl;

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset and social layer");
  add_common(synth, c_synth);
  int synth_n = -1;
  double synth_alignment = -1, synth_signal = -1, synth_age_skew = -1;
  synth->add_option("--n", synth_n, "respondent count override");
  synth->add_option("--alignment", synth_alignment, "like alignment override");
  synth->add_option("--survey-signal", synth_signal, "survey signal override");
  synth->add_option("--age-skew", synth_age_skew, "age skew override");

  // features
  auto* features = app.add_subcommand("features", "encode a dataset into a feature matrix");
  add_common(features, c_features, false);
  std::string features_input, features_model = "all_likes";
  features->add_option("--input", features_input, "dataset JSONL")->required();
  features->add_option("--model", features_model,
                       "baseline|single_like|all_likes|combined|all_likes_min7");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "fit the L1 multinomial model (CV when no --lambda)");
  add_common(fit_cmd, c_fit);
  std::string fit_input, fit_model = "all_likes";
  double fit_lambda = -1;
  std::vector<double> fit_grid;
  int fit_folds = -1;
  fit_cmd->add_option("--input", fit_input, "dataset JSONL")->required();
  fit_cmd->add_option("--model", fit_model, "model kind");
  fit_cmd->add_option("--lambda", fit_lambda, "fixed L1 penalty (skips CV)");
  fit_cmd->add_option("--lambda-grid", fit_grid, "CV grid")->delimiter(',');
  fit_cmd->add_option("--folds", fit_folds, "CV fold count");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "score predictions or a fitted model");
  add_common(eval_cmd, c_eval, false);
  std::string eval_input, eval_fit, eval_pred, eval_gold;
  eval_cmd->add_option("--input", eval_input, "dataset JSONL (with --fit)");
  eval_cmd->add_option("--fit", eval_fit, "fit.json from the fit subcommand");
  eval_cmd->add_option("--pred", eval_pred, "predicted parties CSV (with --gold)");
  eval_cmd->add_option("--gold", eval_gold, "gold parties CSV");

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "sweep the min-likes / party-like-cap grid");
  add_common(grid_cmd, c_grid, false);
  std::string grid_input;
  std::vector<int> grid_min_likes;
  std::vector<double> grid_plc;
  grid_cmd->add_option("--input", grid_input, "dataset JSONL")->required();
  grid_cmd->add_option("--min-likes", grid_min_likes, "min likes gates")->delimiter(',');
  grid_cmd->add_option("--plc", grid_plc, "party like cap gates")->delimiter(',');

  // propagate
  auto* prop = app.add_subcommand("propagate", "tag and comment-like vector propagation");
  add_common(prop, c_prop, false);
  std::string prop_input, prop_posts, prop_tags, prop_cl;
  prop->add_option("--input", prop_input, "dataset JSONL")->required();
  prop->add_option("--posts", prop_posts, "media posts JSONL")->required();
  prop->add_option("--tags", prop_tags, "tag edges JSONL")->required();
  prop->add_option("--comment-likes", prop_cl, "comment-like edges JSONL")->required();

  // nonresponse
  auto* nonresp = app.add_subcommand("nonresponse", "permutation skew tests vs the full survey");
  add_common(nonresp, c_nonresp);
  std::string nr_input, nr_sub;
  std::vector<std::string> nr_features;
  int nr_perm = 10000;
  nonresp->add_option("--input", nr_input, "full survey dataset JSONL")->required();
  nonresp->add_option("--sub", nr_sub, "filtered subsample JSONL")->required();
  nonresp->add_option("--features", nr_features, "features to test")->delimiter(',');
  nonresp->add_option("--n-perm", nr_perm, "permutations per test");

  // forecast
  auto* fc = app.add_subcommand("forecast", "aggregate vote-share forecast with poll weighting");
  add_common(fc, c_forecast, false);
  std::string fc_input, fc_polls, fc_actual;
  fc->add_option("--input", fc_input, "dataset JSONL")->required();
  fc->add_option("--polls", fc_polls, "two-poll CSV")->required();
  fc->add_option("--actual", fc_actual, "actual result CSV for MAE scoring");

  // replicate
  auto* repl = app.add_subcommand("replicate", "run the full model-ladder experiment");
  add_common(repl, c_repl);
  std::string repl_input;
  int repl_n = -1, repl_folds = -1;
  double repl_alignment = -1, repl_signal = -1;
  std::vector<double> repl_grid;
  repl->add_option("--input", repl_input, "dataset JSONL (generated when omitted)");
  repl->add_option("--n", repl_n, "respondent count override");
  repl->add_option("--alignment", repl_alignment, "like alignment override");
  repl->add_option("--survey-signal", repl_signal, "survey signal override");
  repl->add_option("--lambda-grid", repl_grid, "CV grid override")->delimiter(',');
  repl->add_option("--folds", repl_folds, "CV fold count override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    json err;
    err["error"]["type"] = "cli";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }

  try {
    if (synth->parsed())
      return run_synth(c_synth, synth_n, synth_alignment, synth_signal, synth_age_skew);
    if (features->parsed()) return run_features(c_features, features_input, features_model);
    if (fit_cmd->parsed())
      return run_fit(c_fit, fit_input, fit_model, fit_lambda, fit_grid, fit_folds);
    if (eval_cmd->parsed()) return run_eval(c_eval, eval_input, eval_fit, eval_pred, eval_gold);
    if (grid_cmd->parsed()) return run_grid(c_grid, grid_input, grid_min_likes, grid_plc);
    if (prop->parsed()) return run_propagate(c_prop, prop_input, prop_posts, prop_tags, prop_cl);
    if (nonresp->parsed()) return run_nonresponse(c_nonresp, nr_input, nr_sub, nr_features, nr_perm);
    if (fc->parsed()) return run_forecast(c_forecast, fc_input, fc_polls, fc_actual);
    if (repl->parsed())
      return run_replicate(c_repl, repl_input, repl_n, repl_alignment, repl_signal, repl_grid,
                           repl_folds);
  } catch (const InvalidConfigError& e) {
    json err;
    err["error"]["type"] = "invalid_config";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const SchemaMismatchError& e) {
    json err;
    err["error"]["type"] = "schema_mismatch";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const UnknownCategoryError& e) {
    json err;
    err["error"]["type"] = "unknown_category";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const Error& e) {
    json err;
    err["error"]["type"] = "runtime";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err;
    err["error"]["type"] = "runtime";
    err["error"]["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
