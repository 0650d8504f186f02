// ctc/ctc-loss.cc

// Copyright 2026  a2w-toolkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "ctc/ctc-loss.h"

#include <cmath>

#include "util/logmath.h"

namespace a2w {

namespace {

// Expanded label sequence [blank, y1, blank, y2, ..., blank].
std::vector<int> expand_with_blanks(std::span<const int> ref) {
  std::vector<int> l(2 * ref.size() + 1, 0);
  for (size_t i = 0; i < ref.size(); i++) l[2 * i + 1] = ref[i];
  return l;
}

}  // namespace

CtcResult ctc_loss(const double *log_posteriors, int64_t num_frames,
                   int64_t num_classes, std::span<const int> ref,
                   bool want_grad) {
  const int64_t T = num_frames;
  const int64_t C = num_classes;
  if (T < 1) throw InputError("ctc_loss: need at least one frame");
  for (int64_t i = 0; i < T * C; i++) {
    if (std::isnan(log_posteriors[i])) {
      throw InputError("ctc_loss: NaN log-posterior");
    }
  }
  int64_t repeats = 0;
  for (size_t i = 0; i < ref.size(); i++) {
    if (ref[i] < 1 || ref[i] >= C) {
      throw InputError("ctc_loss: label " + std::to_string(ref[i]) +
                       " outside [1, " + std::to_string(C) + ")");
    }
    if (i > 0 && ref[i] == ref[i - 1]) repeats++;
  }
  const int64_t min_frames = static_cast<int64_t>(ref.size()) + repeats;
  if (T < min_frames) {
    throw InfeasibleAlignmentError(
        "ctc_loss: " + std::to_string(ref.size()) + " labels with " +
        std::to_string(repeats) + " repeats need at least " +
        std::to_string(min_frames) + " frames, got " + std::to_string(T));
  }

  const std::vector<int> l = expand_with_blanks(ref);
  const int64_t S = static_cast<int64_t>(l.size());
  auto lp = [&](int64_t t, int64_t c) { return log_posteriors[t * C + c]; };
  // Positions reachable at time t given that the full sequence must finish:
  // the standard band [S - 2*(T-t), 2*(t+1)).
  auto band_lo = [&](int64_t t) { return std::max<int64_t>(0, S - 2 * (T - t)); };
  auto band_hi = [&](int64_t t) { return std::min<int64_t>(S, 2 * (t + 1)); };

  std::vector<double> alpha(T * S, kLogZero);
  alpha[0] = lp(0, 0);
  if (S > 1) alpha[1] = lp(0, l[1]);
  for (int64_t t = 1; t < T; t++) {
    for (int64_t s = band_lo(t); s < band_hi(t); s++) {
      double acc = alpha[(t - 1) * S + s];
      if (s > 0) acc = log_add(acc, alpha[(t - 1) * S + s - 1]);
      if (s > 1 && l[s] != 0 && l[s] != l[s - 2]) {
        acc = log_add(acc, alpha[(t - 1) * S + s - 2]);
      }
      alpha[t * S + s] = acc + lp(t, l[s]);
    }
  }
  double log_total = alpha[(T - 1) * S + S - 1];
  if (S > 1) log_total = log_add(log_total, alpha[(T - 1) * S + S - 2]);

  CtcResult result;
  result.neg_log_likelihood = -log_total;
  if (!want_grad) return result;

  std::vector<double> beta(T * S, kLogZero);
  beta[(T - 1) * S + S - 1] = lp(T - 1, l[S - 1]);
  if (S > 1) beta[(T - 1) * S + S - 2] = lp(T - 1, l[S - 2]);
  for (int64_t t = T - 2; t >= 0; t--) {
    for (int64_t s = band_lo(t); s < band_hi(t); s++) {
      double acc = beta[(t + 1) * S + s];
      if (s + 1 < S) acc = log_add(acc, beta[(t + 1) * S + s + 1]);
      if (s + 2 < S && l[s + 2] != 0 && l[s + 2] != l[s]) {
        acc = log_add(acc, beta[(t + 1) * S + s + 2]);
      }
      beta[t * S + s] = acc + lp(t, l[s]);
    }
  }
  double log_total_b = beta[0];
  if (S > 1) log_total_b = log_add(log_total_b, beta[1]);
  result.log_total_backward = log_total_b;

  // gamma(t, c) = P(path passes class c at t | ref); alpha and beta both
  // include the emission at t, so it is divided back out once.
  result.grad.assign(T * C, 0.0);
  for (int64_t t = 0; t < T; t++) {
    std::vector<double> log_gamma(C, kLogZero);
    for (int64_t s = band_lo(t); s < band_hi(t); s++) {
      double v = alpha[t * S + s] + beta[t * S + s] - lp(t, l[s]) - log_total;
      if (v != kLogZero && !std::isnan(v)) {
        log_gamma[l[s]] = log_add(log_gamma[l[s]], v);
      }
    }
    for (int64_t c = 0; c < C; c++) {
      result.grad[t * C + c] =
          std::exp(lp(t, c)) - (log_gamma[c] == kLogZero
                                    ? 0.0
                                    : std::exp(log_gamma[c]));
    }
  }
  return result;
}

}  // namespace a2w
