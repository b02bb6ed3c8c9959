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

// The model-ladder experiment: five feature specifications fit with
// cross-validated L1 selection, reported as one comparison table. All
// reported metrics are cross-validated averages.

#include <atomic>
#include <cstdio>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "likevote/io.hpp"

namespace likevote {

/// Per-fold evaluation at a fixed lambda with the same stratified folds the
/// CV selection used. One report per fold, deterministic ordering.
inline std::vector<EvalReport> cv_fold_reports(const FeatureMatrix& fx, const LabelVector& y,
                                               double lambda, int k_folds, uint64_t seed,
                                               FitConfig base_cfg, const PartySpace& ps,
                                               int threads = 1) {
  int k_classes = base_cfg.n_classes;
  if (k_classes == 0) {
    for (int label : y) k_classes = std::max(k_classes, label + 1);
    base_cfg.n_classes = k_classes;
  }
  const std::vector<int> fold_of = stratified_folds(y, k_classes, k_folds, seed);
  std::vector<EvalReport> reports(k_folds);

  std::atomic<int> next{0};
  auto worker = [&]() {
    FeatureMatrix train_x, test_x;
    LabelVector train_y, test_y;
    while (true) {
      const int fold = next.fetch_add(1);
      if (fold >= k_folds) return;
      detail::subset_rows(fx, y, fold_of, fold, false, train_x, train_y);
      detail::subset_rows(fx, y, fold_of, fold, true, test_x, test_y);
      FitConfig cfg = base_cfg;
      cfg.lambda = lambda;
      const FitResult fr = fit(train_x, train_y, cfg);
      const Matrix probs = predict_proba(fr, test_x);
      reports[fold] = evaluate(probs, test_y, ps);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return reports;
}

struct ModelRun {
  ModelKind kind = ModelKind::Baseline;
  int64_t sample_size = 0;
  CvResult cv;
  EvalReport metrics;  // cross-validated averages
  int64_t included = 0;
  int64_t total = 0;
};

struct ReplicateResult {
  std::vector<ModelRun> models;  // Baseline, SingleLike, AllLikes, Combined, AllLikesMin7
};

/// Runs the full ladder on one dataset. The dataset should already be the
/// main sample (vote intent present, at least one post like); the min-7 model
/// applies its extra filter itself.
inline ReplicateResult replicate(const Dataset& ds, const AppConfig& cfg, uint64_t seed,
                                 int threads = 1) {
  const std::vector<ModelKind> kinds = {ModelKind::Baseline, ModelKind::SingleLike,
                                        ModelKind::AllLikes, ModelKind::Combined,
                                        ModelKind::AllLikesMin7};
  FitConfig base;
  base.max_iters = cfg.solver.max_iters;
  base.tol = cfg.solver.tol;
  base.n_classes = kNumParties;

  ReplicateResult out;
  for (ModelKind kind : kinds) {
    auto [fx, y] = build_matrix(ds, kind, cfg.survey);
    ModelRun run;
    run.kind = kind;
    run.sample_size = static_cast<int64_t>(fx.m.rows);
    run.cv = cross_validate(fx, y, cfg.solver.lambda_grid, cfg.solver.folds, seed, base, threads);

    const auto fold_reports = cv_fold_reports(fx, y, run.cv.chosen_lambda, cfg.solver.folds, seed,
                                              base, ds.party_space, threads);
    EvalReport mean;
    int auc_n = 0, lr_auc_n = 0;
    for (const auto& r : fold_reports) {
      mean.accuracy += r.accuracy;
      mean.macro_precision += r.macro_precision;
      mean.macro_recall += r.macro_recall;
      mean.left_right_accuracy += r.left_right_accuracy;
      if (!std::isnan(r.auc_macro)) {
        mean.auc_macro += r.auc_macro;
        ++auc_n;
      }
      if (!std::isnan(r.left_right_auc)) {
        mean.left_right_auc += r.left_right_auc;
        ++lr_auc_n;
      }
    }
    const double k = static_cast<double>(fold_reports.size());
    mean.accuracy /= k;
    mean.macro_precision /= k;
    mean.macro_recall /= k;
    mean.left_right_accuracy /= k;
    mean.auc_macro = auc_n > 0 ? mean.auc_macro / auc_n : std::nan("");
    mean.left_right_auc = lr_auc_n > 0 ? mean.left_right_auc / lr_auc_n : std::nan("");
    mean.ci_95 = run.cv.ci_95;
    mean.n = run.sample_size;
    run.metrics = mean;

    FitConfig final_cfg = base;
    final_cfg.lambda = run.cv.chosen_lambda;
    const FitResult final_fit = fit(fx, y, final_cfg);
    run.included = final_fit.included;
    run.total = final_fit.total;
    out.models.push_back(std::move(run));
  }
  return out;
}

inline const char* model_description(ModelKind k) {
  switch (k) {
    case ModelKind::Baseline: return "survey only";
    case ModelKind::SingleLike: return "latest like";
    case ModelKind::AllLikes: return "all likes";
    case ModelKind::Combined: return "likes + survey";
    case ModelKind::AllLikesMin7: return "min-7 likes";
  }
  return "?";
}

inline const char* model_column_title(ModelKind k) {
  switch (k) {
    case ModelKind::Baseline: return "Baseline";
    case ModelKind::SingleLike: return "Model I";
    case ModelKind::AllLikes: return "Model II";
    case ModelKind::Combined: return "Model III";
    case ModelKind::AllLikesMin7: return "Model IV";
  }
  return "?";
}

namespace detail {

inline std::string fmt3(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace detail

/// Fixed-width text rendering of the comparison table.
inline std::string render_comparison_table(const ReplicateResult& res) {
  const int name_w = 26, col_w = 16;
  std::ostringstream out;
  auto cell = [&](const std::string& s) {
    out << s;
    for (int i = static_cast<int>(s.size()); i < col_w; ++i) out << ' ';
  };
  auto row_name = [&](const std::string& s) {
    out << s;
    for (int i = static_cast<int>(s.size()); i < name_w; ++i) out << ' ';
  };

  row_name("");
  for (const auto& m : res.models) cell(model_column_title(m.kind));
  out << "\n";
  row_name("Description");
  for (const auto& m : res.models) {
    std::string d = model_description(m.kind);
    if (static_cast<int>(d.size()) > col_w - 2) d = d.substr(0, col_w - 2);
    cell(d);
  }
  out << "\n";
  row_name("Sample size");
  for (const auto& m : res.models) cell(std::to_string(m.sample_size));
  out << "\n";
  row_name("L1-penalty");
  for (const auto& m : res.models) cell(detail::fmt3(m.cv.chosen_lambda));
  out << "\n";
  row_name("Incl./excl. coefficients");
  for (const auto& m : res.models)
    cell(std::to_string(m.included) + "/" + std::to_string(m.total));
  out << "\n";
  row_name("+/- 95% CI");
  for (const auto& m : res.models) cell(detail::fmt3(m.metrics.ci_95));
  out << "\n";
  row_name("Precision");
  for (const auto& m : res.models) cell(detail::fmt3(m.metrics.macro_precision));
  out << "\n";
  row_name("Recall");
  for (const auto& m : res.models) cell(detail::fmt3(m.metrics.macro_recall));
  out << "\n";
  row_name("Accuracy");
  for (const auto& m : res.models) cell(detail::fmt3(m.metrics.accuracy));
  out << "\n";
  row_name("Left/Right Acc.");
  for (const auto& m : res.models) cell(detail::fmt3(m.metrics.left_right_accuracy));
  out << "\n";
  row_name("AUC (macro OVR)");
  for (const auto& m : res.models) cell(detail::fmt3(m.metrics.auc_macro));
  out << "\n";
  row_name("AUC (left/right)");
  for (const auto& m : res.models) cell(detail::fmt3(m.metrics.left_right_auc));
  out << "\n";
  return out.str();
}

inline void save_comparison_csv(const std::string& path, const ReplicateResult& res) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "model,description,sample_size,chosen_lambda,included,total,ci_95,precision,recall,"
         "accuracy,left_right_accuracy,auc_macro_ovr,auc_left_right\n";
  for (const auto& m : res.models) {
    out << model_kind_name(m.kind) << "," << model_description(m.kind) << "," << m.sample_size
        << "," << detail::fmt_double(m.cv.chosen_lambda) << "," << m.included << "," << m.total << ","
        << detail::fmt_double(m.metrics.ci_95) << "," << detail::fmt_double(m.metrics.macro_precision) << ","
        << detail::fmt_double(m.metrics.macro_recall) << "," << detail::fmt_double(m.metrics.accuracy) << ","
        << detail::fmt_double(m.metrics.left_right_accuracy) << ","
        << detail::fmt_double(m.metrics.auc_macro) << "," << detail::fmt_double(m.metrics.left_right_auc)
        << "\n";
  }
}

}  // namespace likevote
