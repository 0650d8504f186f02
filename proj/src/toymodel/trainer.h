// toymodel/trainer.h

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

#ifndef A2W_TOYMODEL_TRAINER_H_
#define A2W_TOYMODEL_TRAINER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "embedcore/vocab-matrix.h"
#include "toymodel/model.h"

namespace a2w {

// One training utterance. ref holds CTC class indices (vocabulary label + 1;
// class 0 is the blank).
struct TrainItem {
  std::string id;
  const double *frames = nullptr;  // num_frames x feature_dim
  int64_t num_frames = 0;
  std::vector<int> ref;
};

// Parameter-shaped gradient accumulator.
struct GradBuf {
  Vec w1, b1, w2, b2;

  static GradBuf zeros_like(const ToyModel &m);
  void add(const GradBuf &other);
  void clear();
};

// CTC loss of one utterance against the frozen G, with the full gradient
// chain: CTC -> softmax scores -> { -b^2, per-branch similarity } -> affine
// layers. Returns the loss; accumulates into grad when non-null.
double utterance_loss_grad(const ToyModel &model, const VocabMatrix &G,
                           CombineMode mode, const TrainItem &item,
                           GradBuf *grad);

struct TrainReport {
  std::vector<double> epoch_mean_loss;
  uint64_t g_checksum_before = 0;
  uint64_t g_checksum_after = 0;
};

// Plain SGD over shuffled minibatches. G is frozen: it is only ever read,
// and the report carries checksums from before and after as evidence.
// Batch items are processed in parallel but their gradients are reduced in
// item order, so results do not depend on the thread count.
TrainReport train_model(ToyModel &model, const VocabMatrix &G,
                        CombineMode mode, const std::vector<TrainItem> &items);

// Posterior pipeline shared by decoding, grids and evaluation: model forward,
// per-branch scoring, combination, softmax. Returns output_frames(T) rows of
// 1 + G.size() probabilities (index 0 = blank).
std::vector<Vec> posterior_grid(const ToyModel &model, const VocabMatrix &G,
                                CombineMode mode, const double *frames,
                                int64_t num_frames);
// Same rows as log-probabilities.
std::vector<Vec> log_posterior_grid(const ToyModel &model,
                                    const VocabMatrix &G, CombineMode mode,
                                    const double *frames, int64_t num_frames);

}  // namespace a2w

#endif  // A2W_TOYMODEL_TRAINER_H_
