// ctc/ctc-loss.h

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

#ifndef A2W_CTC_CTC_LOSS_H_
#define A2W_CTC_CTC_LOSS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "util/common.h"

namespace a2w {

struct CtcResult {
  double neg_log_likelihood = 0.0;
  // d(loss)/d(pre-softmax score), T x num_classes row-major; equals
  // softmax(scores) - gamma where gamma is the alignment posterior.
  // Each row sums to 0. Empty unless requested.
  std::vector<double> grad;
  // Total log-likelihood recomputed from the backward pass (only set when
  // the gradient is requested); must match -neg_log_likelihood.
  double log_total_backward = 0.0;
};

// Forward-backward CTC loss in log space over a T x num_classes grid of
// per-frame log-posteriors. Class 0 is the blank; reference labels are
// class indices in [1, num_classes). Standard blank/repeat collapsing: the
// reference is expanded to [blank, y1, blank, ..., yL, blank] and all
// monotone alignments are summed.
//
// Throws InfeasibleAlignmentError when T is too short to emit the reference
// (T < L + number of adjacent repeats), InputError on NaN log-posteriors or
// out-of-range labels.
CtcResult ctc_loss(const double *log_posteriors, int64_t num_frames,
                   int64_t num_classes, std::span<const int> ref,
                   bool want_grad);

}  // namespace a2w

#endif  // A2W_CTC_CTC_LOSS_H_
