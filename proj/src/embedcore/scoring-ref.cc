// embedcore/scoring-ref.cc

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

#include "embedcore/scoring-ref.h"

#include <cmath>

namespace a2w {

Vec score_against_ref(std::span<const double> f, const VocabMatrix &G) {
  Vec out(G.size());
  for (int64_t i = 0; i < G.size(); i++) {
    std::span<const double> g = G.column(i);
    double acc = 0.0;
    for (size_t j = 0; j < f.size(); j++) {
      double d = f[j] - g[j];
      acc += d * d;
    }
    out[i] = -acc;
  }
  return out;
}

Vec frame_posteriors_ref(const FrameOutput &out, const VocabMatrix &G,
                         CombineMode mode) {
  std::vector<Vec> per_k(out.embeddings.size());
  for (size_t k = 0; k < out.embeddings.size(); k++) {
    per_k[k] = score_against_ref(out.embeddings[k], G);
  }
  Vec logits(G.size() + 1);
  logits[0] = -(out.blank_raw * out.blank_raw);
  if (per_k.size() == 1) {
    for (int64_t i = 0; i < G.size(); i++) logits[i + 1] = per_k[0][i];
  } else if (mode == CombineMode::kSum) {
    for (int64_t i = 0; i < G.size(); i++) {
      double acc = 0.0;
      for (const Vec &s : per_k) acc += s[i];
      logits[i + 1] = acc;
    }
  } else {
    for (int64_t i = 0; i < G.size(); i++) {
      double acc = 0.0;
      for (const Vec &s : per_k) acc += std::exp(s[i]);
      logits[i + 1] = std::log(acc);
    }
  }
  double z = 0.0;
  Vec p(logits.size());
  for (size_t i = 0; i < logits.size(); i++) {
    p[i] = std::exp(logits[i]);
    z += p[i];
  }
  for (double &v : p) v /= z;
  return p;
}

}  // namespace a2w
