// embedcore/scoring.cc

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

#include "embedcore/scoring.h"

#include <algorithm>
#include <cmath>

#include "util/logmath.h"

namespace a2w {

CombineMode combine_mode_from_string(const std::string &s) {
  if (s == "sum") return CombineMode::kSum;
  if (s == "log-sum-exp" || s == "lse") return CombineMode::kLogSumExp;
  throw ConfigError("unknown combination mode: '" + s + "'");
}

std::string to_string(CombineMode mode) {
  return mode == CombineMode::kSum ? "sum" : "log-sum-exp";
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); i++) acc += a[i] * b[i];
  return acc;
}

void check_finite(std::span<const double> values, const char *what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InputError(std::string(what) + ": non-finite value");
    }
  }
}

void score_against(std::span<const double> f, const VocabMatrix &G,
                   std::span<double> out) {
  if (static_cast<int>(f.size()) != G.dim()) {
    throw ConfigError("score_against: embedding dim " +
                      std::to_string(f.size()) + " vs matrix dim " +
                      std::to_string(G.dim()));
  }
  check_finite(f, "score_against input");
  const int64_t n = G.size();
  const int dim = G.dim();
  const double *cols = G.data();
  const double f_sq = dot(f, f);
  for (int64_t i = 0; i < n; i++) {
    double d = dot({cols + i * dim, static_cast<size_t>(dim)}, f);
    out[i] = 2.0 * d - G.sq_norm(i) - f_sq;
  }
}

Vec score_against(std::span<const double> f, const VocabMatrix &G) {
  Vec out(G.size());
  score_against(f, G, out);
  return out;
}

void score_frames(const double *frames, int64_t num_frames,
                  const VocabMatrix &G, double *out) {
  const int dim = G.dim();
  const int64_t n = G.size();
#pragma omp parallel for schedule(static) if (num_frames > 4)
  for (int64_t t = 0; t < num_frames; t++) {
    score_against({frames + t * dim, static_cast<size_t>(dim)}, G,
                  {out + t * n, static_cast<size_t>(n)});
  }
}

Vec combine_scores(const std::vector<Vec> &per_embedding_scores,
                   CombineMode mode) {
  if (per_embedding_scores.empty()) {
    throw InternalError("combine_scores: no score arrays");
  }
  const size_t n = per_embedding_scores[0].size();
  for (const Vec &s : per_embedding_scores) {
    if (s.size() != n) {
      throw InternalError("combine_scores: score array length mismatch");
    }
  }
  if (per_embedding_scores.size() == 1) return per_embedding_scores[0];
  Vec out(n);
  if (mode == CombineMode::kSum) {
    for (size_t i = 0; i < n; i++) {
      double acc = 0.0;
      for (const Vec &s : per_embedding_scores) acc += s[i];
      out[i] = acc;
    }
  } else {
    for (size_t i = 0; i < n; i++) {
      double acc = kLogZero;
      for (const Vec &s : per_embedding_scores) acc = log_add(acc, s[i]);
      out[i] = acc;
    }
  }
  return out;
}

Vec softmax(std::span<const double> logits) {
  Vec p(logits.size());
  double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (size_t i = 0; i < logits.size(); i++) {
    p[i] = std::exp(logits[i] - m);
    z += p[i];
  }
  for (double &v : p) v /= z;
  return p;
}

Vec log_softmax(std::span<const double> logits) {
  Vec lp(logits.size());
  double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (size_t i = 0; i < logits.size(); i++) z += std::exp(logits[i] - m);
  double log_z = m + std::log(z);
  for (size_t i = 0; i < logits.size(); i++) lp[i] = logits[i] - log_z;
  return lp;
}

Vec frame_posteriors(const FrameOutput &out, const VocabMatrix &G,
                     CombineMode mode) {
  if (G.size() == 0) {
    throw ConfigError("frame_posteriors: empty vocabulary");
  }
  if (out.embeddings.empty()) {
    throw ConfigError("frame_posteriors: frame output has no embeddings");
  }
  if (!std::isfinite(out.blank_raw)) {
    throw InputError("frame_posteriors: non-finite blank output");
  }
  std::vector<Vec> per_k(out.embeddings.size());
  for (size_t k = 0; k < out.embeddings.size(); k++) {
    per_k[k] = score_against(out.embeddings[k], G);
  }
  Vec combined = combine_scores(per_k, mode);
  Vec logits(G.size() + 1);
  logits[0] = blank_score(out.blank_raw);
  std::copy(combined.begin(), combined.end(), logits.begin() + 1);
  return softmax(logits);
}

}  // namespace a2w
