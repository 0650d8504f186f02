// toymodel/trainer.cc

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

#include "toymodel/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ctc/ctc-loss.h"
#include "util/logmath.h"
#include "util/rng.h"

namespace a2w {

GradBuf GradBuf::zeros_like(const ToyModel &m) {
  GradBuf g;
  g.w1.assign(m.w1().size(), 0.0);
  g.b1.assign(m.b1().size(), 0.0);
  g.w2.assign(m.w2().size(), 0.0);
  g.b2.assign(m.b2().size(), 0.0);
  return g;
}

void GradBuf::add(const GradBuf &other) {
  for (size_t i = 0; i < w1.size(); i++) w1[i] += other.w1[i];
  for (size_t i = 0; i < b1.size(); i++) b1[i] += other.b1[i];
  for (size_t i = 0; i < w2.size(); i++) w2[i] += other.w2[i];
  for (size_t i = 0; i < b2.size(); i++) b2[i] += other.b2[i];
}

void GradBuf::clear() {
  std::fill(w1.begin(), w1.end(), 0.0);
  std::fill(b1.begin(), b1.end(), 0.0);
  std::fill(w2.begin(), w2.end(), 0.0);
  std::fill(b2.begin(), b2.end(), 0.0);
}

namespace {

// Raw model outputs -> per-branch scores, combined pre-softmax logits and
// log posteriors. Scratch shared between the loss and gradient paths.
struct ForwardScratch {
  std::vector<double> stacked;    // tp x in
  std::vector<double> hidden;     // tp x h
  std::vector<double> raw;        // tp x out
  std::vector<std::vector<double>> branch_scores;  // K of tp x n
  std::vector<double> logits;     // tp x (n+1)
  std::vector<double> logp;       // tp x (n+1)
  int64_t tp = 0;
};

void run_forward(const ToyModel &model, const VocabMatrix &G, CombineMode mode,
                 const double *frames, int64_t num_frames,
                 ForwardScratch *fs) {
  const ModelConfig &c = model.config();
  if (c.dim != G.dim()) {
    throw ConfigError("model dim " + std::to_string(c.dim) +
                      " does not match G dim " + std::to_string(G.dim()));
  }
  const int64_t n = G.size();
  const int K = c.num_embeddings;
  fs->tp = model.output_frames(num_frames);
  const int64_t tp = fs->tp;
  fs->raw = model.forward_raw(frames, num_frames, &fs->hidden, &fs->stacked);

  fs->branch_scores.assign(K, std::vector<double>(tp * n));
  std::vector<double> branch_emb(tp * c.dim);
  for (int k = 0; k < K; k++) {
    for (int64_t t = 0; t < tp; t++) {
      const double *row = fs->raw.data() + t * c.out_dim() + 1 + k * c.dim;
      std::copy(row, row + c.dim, branch_emb.data() + t * c.dim);
    }
    score_frames(branch_emb.data(), tp, G, fs->branch_scores[k].data());
  }

  fs->logits.assign(tp * (n + 1), 0.0);
  for (int64_t t = 0; t < tp; t++) {
    double b = fs->raw[t * c.out_dim()];
    double *row = fs->logits.data() + t * (n + 1);
    row[0] = blank_score(b);
    if (K == 1) {
      const double *s = fs->branch_scores[0].data() + t * n;
      std::copy(s, s + n, row + 1);
    } else if (mode == CombineMode::kSum) {
      for (int64_t i = 0; i < n; i++) {
        double acc = 0.0;
        for (int k = 0; k < K; k++) acc += fs->branch_scores[k][t * n + i];
        row[1 + i] = acc;
      }
    } else {
      for (int64_t i = 0; i < n; i++) {
        double acc = kLogZero;
        for (int k = 0; k < K; k++) {
          acc = log_add(acc, fs->branch_scores[k][t * n + i]);
        }
        row[1 + i] = acc;
      }
    }
  }

  fs->logp.resize(tp * (n + 1));
  for (int64_t t = 0; t < tp; t++) {
    Vec lp = log_softmax({fs->logits.data() + t * (n + 1),
                          static_cast<size_t>(n + 1)});
    std::copy(lp.begin(), lp.end(), fs->logp.data() + t * (n + 1));
  }
}

}  // namespace

double utterance_loss_grad(const ToyModel &model, const VocabMatrix &G,
                           CombineMode mode, const TrainItem &item,
                           GradBuf *grad) {
  const ModelConfig &c = model.config();
  const int64_t n = G.size();
  for (int cls : item.ref) {
    if (cls < 1 || cls > n) {
      throw DataError("utterance '" + item.id + "': label " +
                      std::to_string(cls - 1) + " not present in G (size " +
                      std::to_string(n) + ")");
    }
  }
  ForwardScratch fs;
  run_forward(model, G, mode, item.frames, item.num_frames, &fs);
  const int64_t tp = fs.tp;

  CtcResult ctc;
  try {
    ctc = ctc_loss(fs.logp.data(), tp, n + 1, item.ref, grad != nullptr);
  } catch (const InfeasibleAlignmentError &e) {
    throw DataError("utterance '" + item.id + "': " + e.what());
  }
  if (grad == nullptr) return ctc.neg_log_likelihood;

  // d loss / d model output rows.
  const int K = c.num_embeddings;
  const int out_d = c.out_dim();
  const int h = c.hidden;
  const int in = c.in_dim();
  std::vector<double> d_out(tp * out_d, 0.0);
  for (int64_t t = 0; t < tp; t++) {
    const double *gu = ctc.grad.data() + t * (n + 1);
    const double *orow = fs.raw.data() + t * out_d;
    double *drow = d_out.data() + t * out_d;
    // d(-b^2)/db = -2b.
    drow[0] = gu[0] * (-2.0 * orow[0]);
    for (int k = 0; k < K; k++) {
      const double *f = orow + 1 + k * c.dim;
      const double *sk = fs.branch_scores[k].data() + t * n;
      const double *u = fs.logits.data() + t * (n + 1) + 1;
      double *df = drow + 1 + k * c.dim;
      // Effective upstream weight for branch k on word i: 1 under sum,
      // softmax weight exp(s_k - u) under log-sum-exp.
      double gsum = 0.0;
      Vec acc(c.dim, 0.0);
      for (int64_t i = 0; i < n; i++) {
        double gi = gu[1 + i];
        if (gi == 0.0) continue;
        if (K > 1 && mode == CombineMode::kLogSumExp) {
          gi *= std::exp(sk[i] - u[i]);
        }
        gsum += gi;
        const double *gcol = G.data() + i * c.dim;
        for (int d = 0; d < c.dim; d++) acc[d] += gi * gcol[d];
      }
      // d s_i / d f = 2 (g_i - f).
      for (int d = 0; d < c.dim; d++) df[d] = 2.0 * (acc[d] - gsum * f[d]);
    }
  }

  // Affine layers. d_hidden = d_out * W2^T, through tanh, then W1.
  for (int64_t t = 0; t < tp; t++) {
    const double *drow = d_out.data() + t * out_d;
    const double *hrow = fs.hidden.data() + t * h;
    const double *xrow = fs.stacked.data() + t * in;
    for (int j = 0; j < out_d; j++) grad->b2[j] += drow[j];
    std::vector<double> dh(h, 0.0);
    for (int i = 0; i < h; i++) {
      const double *w2row = model.w2().data() + static_cast<size_t>(i) * out_d;
      double *gw2row = grad->w2.data() + static_cast<size_t>(i) * out_d;
      double acc = 0.0;
      for (int j = 0; j < out_d; j++) {
        acc += w2row[j] * drow[j];
        gw2row[j] += hrow[i] * drow[j];
      }
      dh[i] = acc * (1.0 - hrow[i] * hrow[i]);
      grad->b1[i] += dh[i];
    }
    for (int i = 0; i < in; i++) {
      if (xrow[i] == 0.0) continue;
      double *gw1row = grad->w1.data() + static_cast<size_t>(i) * h;
      for (int j = 0; j < h; j++) gw1row[j] += xrow[i] * dh[j];
    }
  }
  return ctc.neg_log_likelihood;
}

TrainReport train_model(ToyModel &model, const VocabMatrix &G,
                        CombineMode mode,
                        const std::vector<TrainItem> &items) {
  const ModelConfig &c = model.config();
  TrainReport report;
  report.g_checksum_before = G.checksum();
  if (items.empty()) throw DataError("train: empty corpus");

  const int64_t num_items = static_cast<int64_t>(items.size());
  // Validate up front; the batch loop below must not throw across the
  // parallel region.
  for (const TrainItem &item : items) {
    int64_t repeats = 0;
    for (size_t i = 0; i < item.ref.size(); i++) {
      if (item.ref[i] < 1 || item.ref[i] > G.size()) {
        throw DataError("utterance '" + item.id + "': label " +
                        std::to_string(item.ref[i] - 1) +
                        " not present in G (size " + std::to_string(G.size()) +
                        ")");
      }
      if (i > 0 && item.ref[i] == item.ref[i - 1]) repeats++;
    }
    if (item.ref.empty()) {
      throw DataError("utterance '" + item.id + "': empty reference");
    }
    if (model.output_frames(item.num_frames) <
        static_cast<int64_t>(item.ref.size()) + repeats) {
      throw DataError("utterance '" + item.id +
                      "': too few frames to align the reference");
    }
  }
  std::vector<int64_t> order(num_items);
  std::iota(order.begin(), order.end(), 0);
  std::vector<GradBuf> item_grads(c.batch_size);
  for (auto &g : item_grads) g = GradBuf::zeros_like(model);
  std::vector<double> item_loss(c.batch_size, 0.0);
  GradBuf total = GradBuf::zeros_like(model);

  for (int epoch = 0; epoch < c.epochs; epoch++) {
    Rng shuffle_rng(Rng::derive(c.seed, 100 + epoch));
    for (int64_t i = num_items - 1; i > 0; i--) {
      int64_t j = shuffle_rng.uniform_int(0, i);
      std::swap(order[i], order[j]);
    }
    double loss_sum = 0.0;
    for (int64_t start = 0; start < num_items; start += c.batch_size) {
      const int64_t bn = std::min<int64_t>(c.batch_size, num_items - start);
      bool failed = false;
      std::string fail_msg;
#pragma omp parallel for schedule(dynamic)
      for (int64_t b = 0; b < bn; b++) {
        try {
          item_grads[b].clear();
          item_loss[b] = utterance_loss_grad(model, G, mode,
                                             items[order[start + b]],
                                             &item_grads[b]);
        } catch (const std::exception &e) {
#pragma omp critical
          {
            failed = true;
            fail_msg = e.what();
          }
        }
      }
      if (failed) throw InternalError("training batch failed: " + fail_msg);
      // Fixed-order reduction keeps the update identical for any thread
      // count.
      total.clear();
      for (int64_t b = 0; b < bn; b++) {
        total.add(item_grads[b]);
        loss_sum += item_loss[b];
      }
      const double step = c.learning_rate / static_cast<double>(bn);
      for (size_t i = 0; i < model.w1().size(); i++) {
        model.w1()[i] -= step * total.w1[i];
      }
      for (size_t i = 0; i < model.b1().size(); i++) {
        model.b1()[i] -= step * total.b1[i];
      }
      for (size_t i = 0; i < model.w2().size(); i++) {
        model.w2()[i] -= step * total.w2[i];
      }
      for (size_t i = 0; i < model.b2().size(); i++) {
        model.b2()[i] -= step * total.b2[i];
      }
    }
    report.epoch_mean_loss.push_back(loss_sum / static_cast<double>(num_items));
  }
  report.g_checksum_after = G.checksum();
  return report;
}

std::vector<Vec> posterior_grid(const ToyModel &model, const VocabMatrix &G,
                                CombineMode mode, const double *frames,
                                int64_t num_frames) {
  ForwardScratch fs;
  run_forward(model, G, mode, frames, num_frames, &fs);
  const int64_t n1 = G.size() + 1;
  std::vector<Vec> rows(fs.tp);
  for (int64_t t = 0; t < fs.tp; t++) {
    rows[t] = softmax({fs.logits.data() + t * n1, static_cast<size_t>(n1)});
  }
  return rows;
}

std::vector<Vec> log_posterior_grid(const ToyModel &model,
                                    const VocabMatrix &G, CombineMode mode,
                                    const double *frames, int64_t num_frames) {
  ForwardScratch fs;
  run_forward(model, G, mode, frames, num_frames, &fs);
  const int64_t n1 = G.size() + 1;
  std::vector<Vec> rows(fs.tp);
  for (int64_t t = 0; t < fs.tp; t++) {
    rows[t].assign(fs.logp.begin() + t * n1, fs.logp.begin() + (t + 1) * n1);
  }
  return rows;
}

}  // namespace a2w
