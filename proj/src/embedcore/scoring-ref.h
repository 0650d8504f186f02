// embedcore/scoring-ref.h

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

#ifndef A2W_EMBEDCORE_SCORING_REF_H_
#define A2W_EMBEDCORE_SCORING_REF_H_

#include <span>

#include "embedcore/scoring.h"
#include "embedcore/vocab-matrix.h"

namespace a2w {

// Serial reference implementations, kept independent of the expanded-form
// kernels so tests and the benchmark can compare the two routes.

// Per-column -||f - g_i||^2, accumulated coordinate by coordinate.
Vec score_against_ref(std::span<const double> f, const VocabMatrix &G);

// Direct exp-and-normalize posterior, no max subtraction.
Vec frame_posteriors_ref(const FrameOutput &out, const VocabMatrix &G,
                         CombineMode mode);

}  // namespace a2w

#endif  // A2W_EMBEDCORE_SCORING_REF_H_
