// embedcore/scoring.h

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

#ifndef A2W_EMBEDCORE_SCORING_H_
#define A2W_EMBEDCORE_SCORING_H_

#include <span>
#include <vector>

#include "embedcore/vocab-matrix.h"
#include "util/common.h"

namespace a2w {

// How the K per-embedding score vectors are merged into one.
//   kSum:       elementwise sum of the raw scores (the default).
//   kLogSumExp: elementwise log(sum_k exp(s_k)), treating the branches as
//               mixture components.
enum class CombineMode { kSum, kLogSumExp };

CombineMode combine_mode_from_string(const std::string &s);
std::string to_string(CombineMode mode);

// One time step of the acoustic model: the raw blank output b_t plus K
// proposed embeddings f_{t,1..K}.
struct FrameOutput {
  double blank_raw = 0.0;
  std::vector<Vec> embeddings;
};

// Single dot-product routine shared by norm caching, scoring and the
// reference path, so equal inputs produce bit-equal sums.
double dot(std::span<const double> a, std::span<const double> b);

// Similarity of f against every column of G: the negative squared Euclidean
// distance, computed in the expanded form
//     s_i = 2 g_i^T f - g_i^T g_i - f^T f
// with the g_i^T g_i term cached in G. The maximum value 0 is attained
// exactly when f equals the column.
void score_against(std::span<const double> f, const VocabMatrix &G,
                   std::span<double> out);
Vec score_against(std::span<const double> f, const VocabMatrix &G);

// Batch kernel: T frame embeddings (row-major T x dim) against all columns,
// producing a row-major T x size() score grid. Parallel over frames.
void score_frames(const double *frames, int64_t num_frames,
                  const VocabMatrix &G, double *out);

// Merges K score vectors. K = 1 returns the input unchanged under both modes.
Vec combine_scores(const std::vector<Vec> &per_embedding_scores,
                   CombineMode mode);

// The "blank" pre-softmax score -b^2; always <= 0, like the word scores.
inline double blank_score(double b) { return -(b * b); }

// Stable softmax / log-softmax (max-subtraction); logits left unmodified.
Vec softmax(std::span<const double> logits);
Vec log_softmax(std::span<const double> logits);

// Full per-frame posterior over {blank} + vocabulary, index 0 = blank:
// softmax of [-b_t^2, combined word scores].
Vec frame_posteriors(const FrameOutput &out, const VocabMatrix &G,
                     CombineMode mode);

void check_finite(std::span<const double> values, const char *what);

}  // namespace a2w

#endif  // A2W_EMBEDCORE_SCORING_H_
