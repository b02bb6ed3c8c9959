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
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "likevote/core.hpp"

namespace likevote {

/// Party vote shares; entries in [0, 1] summing to 1.
struct ShareVector {
  std::array<double, kNumParties> shares{};

  double sum() const {
    double s = 0.0;
    for (double v : shares) s += v;
    return s;
  }
};

struct PollObservation {
  int64_t date = 0;  // days since epoch
  ShareVector shares;
};

/// Each user casts one vote for their most-liked party (ties to the lowest
/// party index); shares normalize by the user count.
inline ShareVector raw_count_shares(const std::vector<PartyCountVector>& users) {
  if (users.empty()) throw EmptyUserListError("raw_count_shares: no users");
  std::array<int64_t, kNumParties> votes{};
  for (const auto& u : users) {
    const int top = u.argmax();
    if (top < 0) throw ZeroTotalError("raw_count_shares: user with zero likes");
    ++votes[top];
  }
  ShareVector out;
  for (int i = 0; i < kNumParties; ++i)
    out.shares[i] = static_cast<double>(votes[i]) / static_cast<double>(users.size());
  return out;
}

/// Mean absolute error across the nine party shares.
inline double mae(const ShareVector& pred, const ShareVector& actual) {
  double s = 0.0;
  for (int i = 0; i < kNumParties; ++i) s += std::fabs(pred.shares[i] - actual.shares[i]);
  return s / kNumParties;
}

namespace detail {

inline ShareVector renormalize(const std::array<double, kNumParties>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  if (s <= 0.0) throw ZeroWeightMassError("weighted shares sum to zero");
  ShareVector out;
  for (int i = 0; i < kNumParties; ++i) out.shares[i] = v[i] / s;
  return out;
}

/// RSS between the reweighted-and-renormalized counts and the two polls.
inline double weight_objective(const std::array<double, kNumParties>& w,
                               const std::array<ShareVector, 2>& fb,
                               const std::array<PollObservation, 2>& polls) {
  double rss = 0.0;
  for (int p = 0; p < 2; ++p) {
    std::array<double, kNumParties> scaled{};
    double total = 0.0;
    for (int i = 0; i < kNumParties; ++i) {
      scaled[i] = w[i] * fb[p].shares[i];
      total += scaled[i];
    }
    for (int i = 0; i < kNumParties; ++i) {
      const double r = scaled[i] / total - polls[p].shares.shares[i];
      rss += r * r;
    }
  }
  return rss;
}

}  // namespace detail

struct WeightFitResult {
  std::array<double, kNumParties> weights{};
  double objective = 0.0;
  int iterations = 0;
  bool degenerate = false;  // flat objective; weights returned as-is
};

/// Fits multiplicative per-party weights so that the renormalized weighted
/// counts match two historical polls in least squares. Projected gradient
/// descent with backtracking from an all-ones start; weights stay
/// nonnegative. The objective can only go down from the start, and it is
/// invariant to positive rescaling of w.
inline WeightFitResult fit_weights(const std::array<ShareVector, 2>& fb_at_poll_dates,
                                   const std::array<PollObservation, 2>& polls,
                                   int max_iters = 200000, double tol = 1e-14) {
  if (polls[0].date == polls[1].date)
    throw DegenerateInputError("fit_weights: polls must have distinct dates");

  WeightFitResult res;
  res.weights.fill(1.0);

  // A one-hot count vector leaves the renormalized forecast constant in w;
  // if the matching poll disagrees, no weighting can help.
  for (int p = 0; p < 2; ++p) {
    int nonzero = 0;
    for (double s : fb_at_poll_dates[p].shares)
      if (s > 0.0) ++nonzero;
    if (nonzero <= 1) {
      res.degenerate = true;
      res.objective = detail::weight_objective(res.weights, fb_at_poll_dates, polls);
      return res;
    }
  }

  auto gradient = [&](const std::array<double, kNumParties>& w) {
    std::array<double, kNumParties> g{};
    for (int p = 0; p < 2; ++p) {
      std::array<double, kNumParties> scaled{};
      double total = 0.0;
      for (int i = 0; i < kNumParties; ++i) {
        scaled[i] = w[i] * fb_at_poll_dates[p].shares[i];
        total += scaled[i];
      }
      std::array<double, kNumParties> f{};
      double rf = 0.0;
      for (int i = 0; i < kNumParties; ++i) {
        f[i] = scaled[i] / total;
        rf += (f[i] - polls[p].shares.shares[i]) * f[i];
      }
      for (int i = 0; i < kNumParties; ++i) {
        const double r_i = f[i] - polls[p].shares.shares[i];
        g[i] += 2.0 * (fb_at_poll_dates[p].shares[i] / total) * (r_i - rf);
      }
    }
    return g;
  };

  double objective = detail::weight_objective(res.weights, fb_at_poll_dates, polls);
  double step = 1.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    const auto g = gradient(res.weights);
    step *= 1.2;
    std::array<double, kNumParties> trial{};
    double trial_obj = objective;
    bool accepted = false;
    while (step >= 1e-18) {
      for (int i = 0; i < kNumParties; ++i)
        trial[i] = std::max(0.0, res.weights[i] - step * g[i]);
      trial_obj = detail::weight_objective(trial, fb_at_poll_dates, polls);
      if (trial_obj < objective) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double delta = objective - trial_obj;
    res.weights = trial;
    objective = trial_obj;
    res.iterations = iter + 1;
    if (delta <= tol * std::max(1.0, objective)) break;
  }
  res.objective = objective;
  return res;
}

/// Weighted aggregate forecast: renormalized elementwise product of the
/// weights and the raw count shares. Invariant to positive rescaling of w.
inline ShareVector forecast(const std::vector<PartyCountVector>& users,
                            const std::array<double, kNumParties>& w) {
  double mass = 0.0;
  for (double x : w) {
    if (x < 0.0) throw ZeroWeightMassError("forecast: negative weight");
    mass += x;
  }
  if (mass <= 0.0) throw ZeroWeightMassError("forecast: all-zero weight vector");
  const ShareVector raw = raw_count_shares(users);
  std::array<double, kNumParties> scaled{};
  for (int i = 0; i < kNumParties; ++i) scaled[i] = w[i] * raw.shares[i];
  return detail::renormalize(scaled);
}

/// Most-liked-party shares over users with at least one post like in the
/// window (trailing `window_days` up to and including `date`).
inline ShareVector window_count_shares(const Dataset& ds, int64_t date_epoch_seconds,
                                       int window_days = 7) {
  const int64_t end = date_epoch_seconds;
  const int64_t start = end - static_cast<int64_t>(window_days) * 86400;
  std::vector<PartyCountVector> users;
  for (const auto& r : ds.respondents) {
    PartyCountVector v;
    for (const auto& ev : r.like_history) {
      if (ev.kind != LikeKind::PostLike) continue;
      if (ev.timestamp < start || ev.timestamp > end) continue;
      const int idx = ds.party_space.index_of(ev.party);
      if (idx >= 0) ++v.counts[idx];
    }
    if (v.total() > 0) users.push_back(v);
  }
  return raw_count_shares(users);
}

}  // namespace likevote
