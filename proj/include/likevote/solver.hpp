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
#include <cstdint>
#include <numeric>
#include <thread>
#include <vector>

#include "likevote/features.hpp"
#include "likevote/metrics.hpp"
#include "likevote/rng.hpp"

namespace likevote {

/// Proximal map of t * |.|: sign(z) * max(|z| - t, 0).
inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

struct FitConfig {
  double lambda = 0.0;  // L1 penalty on coefficients; the L2 penalty is identically zero
  int max_iters = 2000;
  double tol = 1e-8;  // relative objective change between iterations

  enum class StepRule { BacktrackingLineSearch, FixedStep };
  StepRule step_rule = StepRule::BacktrackingLineSearch;
  double fixed_step = 1e-3;

  bool penalize_intercept = false;  // kept visible; the model never penalizes intercepts
  int n_classes = 0;                // 0 = infer from labels as max+1
};

/// Fitted multinomial model. Coefficients are on the standardized feature
/// scale; feature_means/feature_scales reproduce the training transform so
/// prediction works on raw inputs. All class rows are kept (no pivot class);
/// the L1 penalty resolves the softmax degeneracy.
struct FitResult {
  Matrix coefficients;  // n_classes x d
  std::vector<double> intercepts;
  double lambda_used = 0.0;
  int64_t included = 0;  // nonzero entries among coefficients and intercepts
  int64_t total = 0;     // all coefficients including intercepts
  std::vector<double> objective_trace;
  bool converged = false;

  int n_classes = 0;
  std::vector<std::string> columns;  // training schema
  std::vector<double> feature_means;
  std::vector<double> feature_scales;
};

namespace detail {

/// Sum negative log-likelihood of the multinomial logistic model, plus the
/// gradient when grad_w/grad_b are non-null. Row order is whatever `order`
/// says; callers pass a canonical order so the floating-point reduction does
/// not depend on how the input rows were arranged.
inline double multinomial_nll(const Matrix& x, const std::vector<int>& y,
                              const std::vector<int>& order, const std::vector<double>& w,
                              const std::vector<double>& b, int k_classes,
                              std::vector<double>* grad_w, std::vector<double>* grad_b) {
  const size_t d = x.cols;
  if (grad_w) {
    grad_w->assign(w.size(), 0.0);
    grad_b->assign(b.size(), 0.0);
  }
  double nll = 0.0;
  std::vector<double> z(k_classes);
  for (int idx : order) {
    const double* xi = x.row(idx);
    for (int k = 0; k < k_classes; ++k) {
      double acc = b[k];
      const double* wk = w.data() + static_cast<size_t>(k) * d;
      for (size_t j = 0; j < d; ++j) acc += wk[j] * xi[j];
      z[k] = acc;
    }
    double zmax = z[0];
    for (int k = 1; k < k_classes; ++k) zmax = std::max(zmax, z[k]);
    double sum = 0.0;
    for (int k = 0; k < k_classes; ++k) sum += std::exp(z[k] - zmax);
    const double lse = zmax + std::log(sum);
    nll += lse - z[y[idx]];
    if (grad_w) {
      for (int k = 0; k < k_classes; ++k) {
        const double delta = std::exp(z[k] - lse) - (y[idx] == k ? 1.0 : 0.0);
        (*grad_b)[k] += delta;
        double* gk = grad_w->data() + static_cast<size_t>(k) * d;
        for (size_t j = 0; j < d; ++j) gk[j] += delta * xi[j];
      }
    }
  }
  return nll;
}

inline double l1_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

/// Rows sorted lexicographically by (features, label). Identical rows commute
/// exactly, so any permutation of the input yields the same reduction order.
inline std::vector<int> canonical_row_order(const Matrix& x, const std::vector<int>& y) {
  std::vector<int> order(x.rows);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double* ra = x.row(a);
    const double* rb = x.row(b);
    for (size_t j = 0; j < x.cols; ++j) {
      if (ra[j] < rb[j]) return true;
      if (ra[j] > rb[j]) return false;
    }
    return y[a] < y[b];
  });
  return order;
}

}  // namespace detail

/// Fits L1-penalized multinomial logistic regression by proximal gradient
/// descent: a gradient step on the smooth negative log-likelihood, then
/// soft-thresholding with t = step * lambda on every non-intercept
/// coefficient. Deterministic from zero initialization; features are
/// standardized internally and coefficients reported on that scale.
/// Running out of iterations is not an error: the trace tells the story.
inline FitResult fit(const FeatureMatrix& fx, const LabelVector& y, const FitConfig& cfg) {
  const Matrix& raw = fx.m;
  if (raw.rows < 2) throw TooFewSamplesError("fit: need at least 2 samples");
  if (raw.rows != y.size()) throw LengthMismatchError("fit: feature/label length mismatch");
  for (double v : raw.data)
    if (!std::isfinite(v)) throw NonFiniteError("fit: non-finite feature value");

  int k_classes = cfg.n_classes;
  int max_label = 0;
  for (int label : y) {
    if (label < 0) throw Error("fit: negative label");
    max_label = std::max(max_label, label);
  }
  if (k_classes == 0) k_classes = max_label + 1;
  if (max_label >= k_classes) throw Error("fit: label outside configured class count");
  {
    std::vector<char> seen(k_classes, 0);
    for (int label : y) seen[label] = 1;
    int distinct = 0;
    for (char s : seen) distinct += s;
    if (distinct < 2) throw SingleClassError("fit: need at least 2 distinct labels");
  }

  const size_t n = raw.rows, d = raw.cols;
  const std::vector<int> canon = detail::canonical_row_order(raw, y);

  // Standardize in canonical order; constant columns get scale 1 and end up
  // identically zero, which the penalty then ignores.
  std::vector<double> means(d, 0.0), scales(d, 1.0);
  for (size_t j = 0; j < d; ++j) {
    double m = 0.0;
    for (int i : canon) m += raw.at(i, j);
    m /= static_cast<double>(n);
    double var = 0.0;
    for (int i : canon) {
      const double c = raw.at(i, j) - m;
      var += c * c;
    }
    var /= static_cast<double>(n);
    means[j] = m;
    scales[j] = var > 1e-24 ? std::sqrt(var) : 1.0;
  }
  Matrix x(n, d);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < d; ++j) x.at(i, j) = (raw.at(i, j) - means[j]) / scales[j];

  // Accelerated monotone proximal gradient. The candidate step is always a
  // gradient step on the smooth NLL followed by soft-thresholding; the
  // extrapolation point only changes where that step starts. A candidate is
  // accepted only if the full objective does not increase, and a rejected
  // candidate restarts the momentum, so the trace is nonincreasing and the
  // slow flat directions of the NLL still converge at the accelerated rate.
  // FixedStep mode is the plain unaccelerated iteration.
  const bool accel = cfg.step_rule == FitConfig::StepRule::BacktrackingLineSearch;
  const size_t wn = static_cast<size_t>(k_classes) * d;
  std::vector<double> wx(wn, 0.0), bx(k_classes, 0.0);  // accepted point
  std::vector<double> wy = wx, by = bx;                 // extrapolation point
  std::vector<double> wz(wn, 0.0), bz(k_classes, 0.0);  // candidate
  std::vector<double> gw, gb;

  double objective =
      detail::multinomial_nll(x, y, canon, wx, bx, k_classes, nullptr, nullptr);

  FitResult res;
  res.objective_trace.push_back(objective);

  double step = accel ? 1.0 : cfg.fixed_step;
  double t_mom = 1.0;
  bool plain_step_next = true;  // y == x, so the next candidate is unaccelerated

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const double nll_y = detail::multinomial_nll(x, y, canon, wy, by, k_classes, &gw, &gb);
    if (accel) step *= 1.1;

    double nll_z = 0.0;
    while (true) {
      const double thresh = step * cfg.lambda;
      for (size_t i = 0; i < wn; ++i) wz[i] = soft_threshold(wy[i] - step * gw[i], thresh);
      for (int k = 0; k < k_classes; ++k) {
        bz[k] = by[k] - step * gb[k];
        if (cfg.penalize_intercept) bz[k] = soft_threshold(bz[k], thresh);
      }
      nll_z = detail::multinomial_nll(x, y, canon, wz, bz, k_classes, nullptr, nullptr);
      if (!accel) break;

      // Sufficient decrease against the quadratic model at the start point.
      double inner = 0.0, sq = 0.0;
      for (size_t i = 0; i < wn; ++i) {
        const double diff = wz[i] - wy[i];
        inner += gw[i] * diff;
        sq += diff * diff;
      }
      for (int k = 0; k < k_classes; ++k) {
        const double diff = bz[k] - by[k];
        inner += gb[k] * diff;
        sq += diff * diff;
      }
      if (nll_z <= nll_y + inner + sq / (2.0 * step) + 1e-12 * std::fabs(nll_y)) break;
      step *= 0.5;
      if (step < 1e-18) break;
    }
    if (accel && step < 1e-18) {
      res.converged = true;  // no descent direction left at float precision
      break;
    }

    const double obj_z = nll_z + cfg.lambda * detail::l1_norm(wz);

    if (!accel) {  // plain fixed-step iteration accepts unconditionally
      const double prev = objective;
      objective = obj_z;
      wx.swap(wz);
      bx.swap(bz);
      wy = wx;
      by = bx;
      res.objective_trace.push_back(objective);
      if (std::fabs(prev - objective) <= cfg.tol * std::max(1.0, std::fabs(prev))) {
        res.converged = true;
        break;
      }
      continue;
    }

    if (obj_z <= objective) {
      const double prev = objective;
      objective = obj_z;
      const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom)) / 2.0;
      const double momentum = (t_mom - 1.0) / t_next;
      for (size_t i = 0; i < wn; ++i) wy[i] = wz[i] + momentum * (wz[i] - wx[i]);
      for (int k = 0; k < k_classes; ++k) by[k] = bz[k] + momentum * (bz[k] - bx[k]);
      wx.swap(wz);
      bx.swap(bz);
      t_mom = t_next;
      res.objective_trace.push_back(objective);

      if (std::fabs(prev - objective) <= cfg.tol * std::max(1.0, std::fabs(prev))) {
        if (plain_step_next) {
          res.converged = true;  // an unaccelerated step made no progress
          break;
        }
        // Momentum may merely be mid-swing; confirm with a restarted step.
        t_mom = 1.0;
        wy = wx;
        by = bx;
        plain_step_next = true;
      } else {
        plain_step_next = false;
      }
    } else {
      // Candidate overshot. Restart the momentum at the accepted point; if a
      // plain step already failed to improve, the point is converged.
      res.objective_trace.push_back(objective);
      if (plain_step_next) {
        res.converged = true;
        break;
      }
      t_mom = 1.0;
      wy = wx;
      by = bx;
      plain_step_next = true;
    }
  }

  res.coefficients = Matrix(k_classes, d);
  res.coefficients.data = wx;
  res.intercepts = bx;
  res.lambda_used = cfg.lambda;
  res.n_classes = k_classes;
  res.columns = fx.columns;
  res.feature_means = means;
  res.feature_scales = scales;
  res.total = static_cast<int64_t>(wn) + k_classes;
  res.included = 0;
  for (double v : wx)
    if (v != 0.0) ++res.included;
  for (double v : bx)
    if (v != 0.0) ++res.included;
  return res;
}

/// Softmax readout on raw features; columns must match the training schema.
/// Every row sums to 1 and each entry is strictly inside (0, 1).
inline Matrix predict_proba(const FitResult& fr, const FeatureMatrix& fx) {
  if (fx.columns != fr.columns)
    throw SchemaMismatchError("predict_proba: feature columns do not match training columns");
  const size_t n = fx.m.rows, d = fx.m.cols;
  Matrix probs(n, fr.n_classes);
  std::vector<double> z(fr.n_classes);
  for (size_t i = 0; i < n; ++i) {
    for (int k = 0; k < fr.n_classes; ++k) {
      double acc = fr.intercepts[k];
      const double* wk = fr.coefficients.row(k);
      for (size_t j = 0; j < d; ++j)
        acc += wk[j] * (fx.m.at(i, j) - fr.feature_means[j]) / fr.feature_scales[j];
      z[k] = acc;
    }
    double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (int k = 0; k < fr.n_classes; ++k) {
      probs.at(i, k) = std::exp(z[k] - zmax);
      sum += probs.at(i, k);
    }
    for (int k = 0; k < fr.n_classes; ++k) probs.at(i, k) /= sum;
  }
  return probs;
}

struct CvResult {
  std::vector<double> grid;
  std::vector<std::vector<double>> fold_accuracies;  // [grid index][fold]
  std::vector<double> mean_accuracy;                 // per grid index
  double chosen_lambda = 0.0;
  double ci_95 = 0.0;  // 1.96 * sd(fold accuracies at chosen lambda) / sqrt(k)
};

/// Stratified fold assignment: per class, seeded shuffle then round-robin
/// dealing with a rolling cursor so fold sizes stay balanced.
inline std::vector<int> stratified_folds(const std::vector<int>& y, int k_classes, int k_folds,
                                         uint64_t seed) {
  std::vector<int> fold_of(y.size(), 0);
  Rng rng(derive_seed(seed, 0x0f01d5));
  int cursor = 0;
  for (int c = 0; c < k_classes; ++c) {
    std::vector<int> members;
    for (size_t i = 0; i < y.size(); ++i)
      if (y[i] == c) members.push_back(static_cast<int>(i));
    rng.shuffle(members);
    for (int idx : members) {
      fold_of[idx] = cursor % k_folds;
      ++cursor;
    }
  }
  return fold_of;
}

namespace detail {

inline void subset_rows(const FeatureMatrix& fx, const LabelVector& y,
                        const std::vector<int>& fold_of, int fold, bool take_fold,
                        FeatureMatrix& out_x, LabelVector& out_y) {
  out_x.kind = fx.kind;
  out_x.columns = fx.columns;
  out_x.row_ids.clear();
  out_x.m = Matrix(0, fx.m.cols);
  out_y.clear();
  for (size_t i = 0; i < fx.m.rows; ++i) {
    if ((fold_of[i] == fold) != take_fold) continue;
    out_x.row_ids.push_back(fx.row_ids.empty() ? "" : fx.row_ids[i]);
    out_x.m.data.insert(out_x.m.data.end(), fx.m.row(i), fx.m.row(i) + fx.m.cols);
    ++out_x.m.rows;
    out_y.push_back(y[i]);
  }
}

}  // namespace detail

/// K-fold cross-validation over a lambda grid. Cells are independent fits
/// from zero init, so running them on several threads cannot change any
/// number; accuracy ties between lambdas resolve to the smaller penalty.
inline CvResult cross_validate(const FeatureMatrix& fx, const LabelVector& y,
                               const std::vector<double>& grid, int k_folds, uint64_t seed,
                               FitConfig base_cfg = {}, int threads = 1) {
  if (grid.empty()) throw Error("cross_validate: empty lambda grid");
  if (k_folds < 2) throw TooFewSamplesError("cross_validate: need at least 2 folds");
  if (fx.m.rows < static_cast<size_t>(k_folds))
    throw TooFewSamplesError("cross_validate: fewer samples than folds");

  int k_classes = base_cfg.n_classes;
  if (k_classes == 0) {
    for (int label : y) k_classes = std::max(k_classes, label + 1);
    base_cfg.n_classes = k_classes;
  }
  const std::vector<int> fold_of = stratified_folds(y, k_classes, k_folds, seed);

  CvResult cv;
  cv.grid = grid;
  cv.fold_accuracies.assign(grid.size(), std::vector<double>(k_folds, 0.0));

  struct Cell { int gi, fi; };
  std::vector<Cell> cells;
  for (int gi = 0; gi < static_cast<int>(grid.size()); ++gi)
    for (int fi = 0; fi < k_folds; ++fi) cells.push_back({gi, fi});

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    FeatureMatrix train_x, test_x;
    LabelVector train_y, test_y;
    while (true) {
      const size_t c = next.fetch_add(1);
      if (c >= cells.size()) return;
      const Cell cell = cells[c];
      detail::subset_rows(fx, y, fold_of, cell.fi, false, train_x, train_y);
      detail::subset_rows(fx, y, fold_of, cell.fi, true, test_x, test_y);
      FitConfig cfg = base_cfg;
      cfg.lambda = grid[cell.gi];
      const FitResult fr = fit(train_x, train_y, cfg);
      const Matrix probs = predict_proba(fr, test_x);
      std::vector<int> pred(probs.rows);
      for (size_t i = 0; i < probs.rows; ++i) {
        int best = 0;
        for (int k = 1; k < k_classes; ++k)
          if (probs.at(i, k) > probs.at(i, best)) best = k;
        pred[i] = best;
      }
      cv.fold_accuracies[cell.gi][cell.fi] = accuracy(pred, test_y);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  cv.mean_accuracy.resize(grid.size());
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    double m = 0.0;
    for (double a : cv.fold_accuracies[gi]) m += a;
    cv.mean_accuracy[gi] = m / k_folds;
  }
  size_t best = 0;
  for (size_t gi = 1; gi < grid.size(); ++gi) {
    if (cv.mean_accuracy[gi] > cv.mean_accuracy[best] ||
        (cv.mean_accuracy[gi] == cv.mean_accuracy[best] && grid[gi] < grid[best]))
      best = gi;
  }
  cv.chosen_lambda = grid[best];

  double mean = cv.mean_accuracy[best], var = 0.0;
  for (double a : cv.fold_accuracies[best]) var += (a - mean) * (a - mean);
  var /= std::max(1, k_folds - 1);
  cv.ci_95 = 1.96 * std::sqrt(var) / std::sqrt(static_cast<double>(k_folds));
  return cv;
}

}  // namespace likevote
