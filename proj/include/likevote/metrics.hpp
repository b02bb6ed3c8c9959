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
#include <cmath>
#include <utility>
#include <vector>

#include "likevote/core.hpp"

namespace likevote {

/// Global fraction of exact matches (not the mean of per-class accuracies).
inline double accuracy(const std::vector<int>& pred, const std::vector<int>& gold) {
  if (pred.size() != gold.size())
    throw LengthMismatchError("accuracy: prediction/gold length mismatch");
  if (pred.empty()) throw LengthMismatchError("accuracy: empty inputs");
  size_t hits = 0;
  for (size_t i = 0; i < pred.size(); ++i)
    if (pred[i] == gold[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

/// Unweighted class means of TP/(TP+FP) and TP/(TP+FN). A class that is never
/// predicted contributes precision 0, which penalizes models that ignore a
/// class; classes absent from gold are skipped for recall.
inline std::pair<double, double> macro_precision_recall(const std::vector<int>& pred,
                                                        const std::vector<int>& gold,
                                                        int num_classes) {
  if (pred.size() != gold.size())
    throw LengthMismatchError("macro_precision_recall: length mismatch");
  std::vector<int64_t> tp(num_classes, 0), fp(num_classes, 0), fn(num_classes, 0);
  for (size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == gold[i]) {
      ++tp[gold[i]];
    } else {
      ++fp[pred[i]];
      ++fn[gold[i]];
    }
  }
  double precision_sum = 0.0;
  double recall_sum = 0.0;
  int recall_classes = 0;
  for (int c = 0; c < num_classes; ++c) {
    const int64_t predicted = tp[c] + fp[c];
    precision_sum += predicted > 0 ? static_cast<double>(tp[c]) / predicted : 0.0;
    const int64_t present = tp[c] + fn[c];
    if (present > 0) {
      recall_sum += static_cast<double>(tp[c]) / present;
      ++recall_classes;
    }
  }
  const double precision = precision_sum / num_classes;
  const double recall = recall_classes > 0 ? recall_sum / recall_classes : 0.0;
  return {precision, recall};
}

namespace detail {

/// One-vs-rest ROC area for a single score column, thresholds swept over
/// 0, step, ..., 1 with `score >= threshold` marking a positive call.
inline double auc_single(const std::vector<double>& scores, const std::vector<char>& positive,
                         double step) {
  int64_t n_pos = 0, n_neg = 0;
  for (char p : positive) (p ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0) return std::nan("");

  // Bucket counts by threshold index so one pass builds the whole sweep.
  const int n_thresholds = static_cast<int>(std::llround(1.0 / step)) + 1;
  std::vector<int64_t> pos_at(n_thresholds + 1, 0), neg_at(n_thresholds + 1, 0);
  for (size_t i = 0; i < scores.size(); ++i) {
    // Number of thresholds t = k*step with score >= t: floor(score/step)+1.
    double s = std::min(std::max(scores[i], 0.0), 1.0);
    int k = static_cast<int>(std::floor(s / step + 1e-12));
    if (k >= n_thresholds) k = n_thresholds - 1;
    (positive[i] ? pos_at : neg_at)[k]++;
  }
  // Sweep from the highest threshold downward; FPR and TPR are nondecreasing.
  double area = 0.0;
  double tpr = 0.0, fpr = 0.0;
  int64_t tp = 0, fpn = 0;
  for (int k = n_thresholds - 1; k >= 0; --k) {
    tp += pos_at[k];
    fpn += neg_at[k];
    const double next_tpr = static_cast<double>(tp) / n_pos;
    const double next_fpr = static_cast<double>(fpn) / n_neg;
    area += (next_fpr - fpr) * (next_tpr + tpr) / 2.0;
    tpr = next_tpr;
    fpr = next_fpr;
  }
  return area;
}

}  // namespace detail

/// Macro one-vs-rest AUC over the classes present in gold. Scores are an
/// n x k probability matrix; classes without positives are skipped.
inline double auc_ovr(const Matrix& scores, const std::vector<int>& gold, double step = 0.0001) {
  if (scores.rows != gold.size()) throw LengthMismatchError("auc_ovr: row/gold length mismatch");
  if (step <= 0.0) throw Error("auc_ovr: step must be positive");
  double sum = 0.0;
  int counted = 0;
  for (size_t c = 0; c < scores.cols; ++c) {
    std::vector<double> col(scores.rows);
    std::vector<char> positive(scores.rows);
    for (size_t i = 0; i < scores.rows; ++i) {
      col[i] = scores.at(i, c);
      positive[i] = gold[i] == static_cast<int>(c);
    }
    const double a = detail::auc_single(col, positive, step);
    if (!std::isnan(a)) {
      sum += a;
      ++counted;
    }
  }
  if (counted == 0) throw DegenerateGoldError("auc_ovr: no class has both positives and negatives");
  return sum / counted;
}

inline int bloc_index(Bloc b) { return b == Bloc::Left ? 0 : 1; }

/// Collapses party labels into left/right blocs and scores the binary task.
/// Accuracy collapses the predicted *party* (argmax first, bloc second), so a
/// correct party prediction can never become a wrong bloc prediction. The AUC
/// runs on bloc-summed probabilities.
inline std::pair<double, double> left_right_metrics(const Matrix& scores,
                                                    const std::vector<int>& gold,
                                                    const PartySpace& ps, double step = 0.0001) {
  if (scores.rows != gold.size())
    throw LengthMismatchError("left_right_metrics: length mismatch");
  std::vector<int> pred_bloc(scores.rows), gold_bloc(scores.rows);
  Matrix bloc_scores(scores.rows, 2);
  for (size_t i = 0; i < scores.rows; ++i) {
    int best = 0;
    for (size_t c = 1; c < scores.cols; ++c)
      if (scores.at(i, c) > scores.at(i, best)) best = static_cast<int>(c);
    pred_bloc[i] = bloc_index(ps.blocs[best]);
    gold_bloc[i] = bloc_index(ps.blocs[gold[i]]);
    for (size_t c = 0; c < scores.cols; ++c)
      bloc_scores.at(i, bloc_index(ps.blocs[c])) += scores.at(i, c);
  }
  const double acc = accuracy(pred_bloc, gold_bloc);
  double auc;
  try {
    auc = auc_ovr(bloc_scores, gold_bloc, step);
  } catch (const DegenerateGoldError&) {
    auc = std::nan("");  // single-bloc gold: no binary ranking task exists
  }
  return {acc, auc};
}

/// Label-only variant for predictors without scores (e.g. the rule classifier).
inline double left_right_accuracy(const std::vector<int>& pred, const std::vector<int>& gold,
                                  const PartySpace& ps) {
  if (pred.size() != gold.size()) throw LengthMismatchError("left_right_accuracy: length mismatch");
  std::vector<int> pb(pred.size()), gb(gold.size());
  for (size_t i = 0; i < pred.size(); ++i) {
    pb[i] = bloc_index(ps.blocs[pred[i]]);
    gb[i] = bloc_index(ps.blocs[gold[i]]);
  }
  return accuracy(pb, gb);
}

/// Everything one column of the model comparison table reports.
struct EvalReport {
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double auc_macro = 0.0;
  double left_right_accuracy = 0.0;
  double left_right_auc = 0.0;
  double ci_95 = 0.0;  // cross-validation confidence interval, if any
  int64_t n = 0;
};

/// Scores probability predictions against gold labels. ci_95 is carried
/// through from cross-validation (zero when not applicable).
inline EvalReport evaluate(const Matrix& scores, const std::vector<int>& gold,
                           const PartySpace& ps, double ci_95 = 0.0, double step = 0.0001) {
  std::vector<int> pred(scores.rows);
  for (size_t i = 0; i < scores.rows; ++i) {
    int best = 0;
    for (size_t c = 1; c < scores.cols; ++c)
      if (scores.at(i, c) > scores.at(i, best)) best = static_cast<int>(c);
    pred[i] = best;
  }
  EvalReport r;
  r.accuracy = accuracy(pred, gold);
  auto pr = macro_precision_recall(pred, gold, static_cast<int>(scores.cols));
  r.macro_precision = pr.first;
  r.macro_recall = pr.second;
  r.auc_macro = auc_ovr(scores, gold, step);
  auto lr = left_right_metrics(scores, gold, ps, step);
  r.left_right_accuracy = lr.first;
  r.left_right_auc = lr.second;
  r.ci_95 = ci_95;
  r.n = static_cast<int64_t>(scores.rows);
  return r;
}

}  // namespace likevote
