// toymodel/model.h

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

#ifndef A2W_TOYMODEL_MODEL_H_
#define A2W_TOYMODEL_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "embedcore/scoring.h"
#include "pronlex/text-encoder.h"
#include "util/common.h"

namespace a2w {

struct ModelConfig {
  int dim = 40;             // embedding dimension, must match the G matrix
  int num_embeddings = 1;   // embeddings proposed per frame (1..3)
  int context = 2;          // input frames stacked on each side
  int hidden = 128;
  int feature_dim = 0;      // per-frame input feature size (required)
  int subsample = 1;        // keep every subsample-th frame
  uint64_t seed = 1;
  double learning_rate = 0.05;
  int epochs = 10;
  int batch_size = 8;

  void validate() const;
  int in_dim() const { return (2 * context + 1) * feature_dim; }
  int out_dim() const { return 1 + num_embeddings * dim; }
};

// Two affine layers with a tanh in between, mapping stacked input frames to
// 1 + K*D outputs per kept frame: the first output is the raw blank score
// b_t, the rest are the K proposed embeddings. Widening K only widens the
// final affine layer; everything before it is unchanged.
class ToyModel {
 public:
  static ToyModel init(const ModelConfig &cfg);  // seeded random weights

  const ModelConfig &config() const { return cfg_; }
  int64_t num_params() const;

  // Number of frames kept after subsampling: ceil(T / subsample).
  int64_t output_frames(int64_t num_frames) const;

  // Stacked input for the kept frame with output index t_out (zero padding
  // outside [0, T)). out must hold in_dim() values.
  void stack_input(const double *frames, int64_t num_frames, int64_t t_out,
                   double *out) const;

  // Full forward pass: frames is T x feature_dim row-major; returns
  // output_frames(T) x out_dim() raw outputs. If hidden_out is non-null it
  // receives the tanh activations (T' x hidden) for backprop.
  std::vector<double> forward_raw(const double *frames, int64_t num_frames,
                                  std::vector<double> *hidden_out = nullptr,
                                  std::vector<double> *stacked_out = nullptr) const;

  // Forward pass split into per-frame blank + K embeddings.
  std::vector<FrameOutput> forward(const double *frames,
                                   int64_t num_frames) const;

  // Parameter access (w1: in x hidden, w2: hidden x out, both row-major).
  Vec &w1() { return w1_; }
  Vec &b1() { return b1_; }
  Vec &w2() { return w2_; }
  Vec &b2() { return b2_; }
  const Vec &w1() const { return w1_; }
  const Vec &b1() const { return b1_; }
  const Vec &w2() const { return w2_; }
  const Vec &b2() const { return b2_; }

 private:
  explicit ToyModel(const ModelConfig &cfg) : cfg_(cfg) {}

  ModelConfig cfg_;
  Vec w1_, b1_, w2_, b2_;
};

// Everything a decode run needs to rebuild its scoring pipeline.
struct CheckpointMeta {
  GMode g_mode = GMode::kOrth;
  CombineMode combine = CombineMode::kSum;
  TextEncoderConfig encoder;
  std::string manifest = "-";
};

// Checkpoint file: text header (version line, key=value config block, a
// "binary" marker line), then the parameter tensors as little-endian 64-bit
// floats in the order w1, b1, w2, b2.
void save_checkpoint(const std::string &path, const ToyModel &model,
                     const CheckpointMeta &meta);
ToyModel load_checkpoint(const std::string &path, CheckpointMeta *meta);

}  // namespace a2w

#endif  // A2W_TOYMODEL_MODEL_H_
