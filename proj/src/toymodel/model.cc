// toymodel/model.cc

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

#include "toymodel/model.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "util/kv-config.h"
#include "util/rng.h"

namespace a2w {

void ModelConfig::validate() const {
  if (dim < 1) throw ConfigError("model: dim must be >= 1");
  if (num_embeddings < 1 || num_embeddings > 3) {
    throw ConfigError("model: num_embeddings must be 1, 2 or 3");
  }
  if (context < 0) throw ConfigError("model: context must be >= 0");
  if (hidden < 1) throw ConfigError("model: hidden must be >= 1");
  if (feature_dim < 1) throw ConfigError("model: feature_dim must be >= 1");
  if (subsample < 1) throw ConfigError("model: subsample must be >= 1");
  if (learning_rate <= 0) throw ConfigError("model: learning_rate must be > 0");
  if (epochs < 1) throw ConfigError("model: epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("model: batch_size must be >= 1");
}

ToyModel ToyModel::init(const ModelConfig &cfg) {
  cfg.validate();
  ToyModel m(cfg);
  const int in = cfg.in_dim();
  const int out = cfg.out_dim();
  m.w1_.resize(static_cast<size_t>(in) * cfg.hidden);
  m.b1_.assign(cfg.hidden, 0.0);
  m.w2_.resize(static_cast<size_t>(cfg.hidden) * out);
  m.b2_.assign(out, 0.0);
  Rng r1(Rng::derive(cfg.seed, 1));
  double s1 = 1.0 / std::sqrt(static_cast<double>(in));
  for (double &v : m.w1_) v = r1.normal() * s1;
  Rng r2(Rng::derive(cfg.seed, 2));
  double s2 = 1.0 / std::sqrt(static_cast<double>(cfg.hidden));
  for (double &v : m.w2_) v = r2.normal() * s2;
  return m;
}

int64_t ToyModel::num_params() const {
  return static_cast<int64_t>(w1_.size() + b1_.size() + w2_.size() +
                              b2_.size());
}

int64_t ToyModel::output_frames(int64_t num_frames) const {
  return (num_frames + cfg_.subsample - 1) / cfg_.subsample;
}

void ToyModel::stack_input(const double *frames, int64_t num_frames,
                           int64_t t_out, double *out) const {
  const int F = cfg_.feature_dim;
  const int64_t center = t_out * cfg_.subsample;
  int64_t pos = 0;
  for (int64_t t = center - cfg_.context; t <= center + cfg_.context; t++) {
    if (t < 0 || t >= num_frames) {
      std::memset(out + pos, 0, F * sizeof(double));
    } else {
      std::memcpy(out + pos, frames + t * F, F * sizeof(double));
    }
    pos += F;
  }
}

std::vector<double> ToyModel::forward_raw(
    const double *frames, int64_t num_frames, std::vector<double> *hidden_out,
    std::vector<double> *stacked_out) const {
  if (num_frames < 1) throw ConfigError("forward: need at least one frame");
  const int in = cfg_.in_dim();
  const int h = cfg_.hidden;
  const int out_d = cfg_.out_dim();
  const int64_t tp = output_frames(num_frames);
  std::vector<double> stacked(static_cast<size_t>(tp) * in);
  std::vector<double> hidden(static_cast<size_t>(tp) * h);
  std::vector<double> out(static_cast<size_t>(tp) * out_d);
  for (int64_t t = 0; t < tp; t++) {
    stack_input(frames, num_frames, t, stacked.data() + t * in);
  }
#pragma omp parallel for schedule(static) if (tp > 8)
  for (int64_t t = 0; t < tp; t++) {
    const double *x = stacked.data() + t * in;
    double *hrow = hidden.data() + t * h;
    for (int j = 0; j < h; j++) {
      double acc = b1_[j];
      const double *wcol = w1_.data() + j;  // stride h over rows
      for (int i = 0; i < in; i++) acc += x[i] * wcol[static_cast<size_t>(i) * h];
      hrow[j] = std::tanh(acc);
    }
    double *orow = out.data() + t * out_d;
    for (int j = 0; j < out_d; j++) {
      double acc = b2_[j];
      const double *wcol = w2_.data() + j;
      for (int i = 0; i < h; i++) acc += hrow[i] * wcol[static_cast<size_t>(i) * out_d];
      orow[j] = acc;
    }
  }
  if (hidden_out != nullptr) *hidden_out = std::move(hidden);
  if (stacked_out != nullptr) *stacked_out = std::move(stacked);
  return out;
}

std::vector<FrameOutput> ToyModel::forward(const double *frames,
                                           int64_t num_frames) const {
  std::vector<double> raw = forward_raw(frames, num_frames);
  const int64_t tp = output_frames(num_frames);
  const int D = cfg_.dim;
  const int K = cfg_.num_embeddings;
  std::vector<FrameOutput> result(tp);
  for (int64_t t = 0; t < tp; t++) {
    const double *row = raw.data() + t * cfg_.out_dim();
    result[t].blank_raw = row[0];
    result[t].embeddings.resize(K);
    for (int k = 0; k < K; k++) {
      result[t].embeddings[k].assign(row + 1 + k * D, row + 1 + (k + 1) * D);
    }
  }
  return result;
}

namespace {

void write_doubles(std::ofstream &out, const Vec &v) {
  out.write(reinterpret_cast<const char *>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_doubles(std::ifstream &in, Vec &v, const std::string &path) {
  in.read(reinterpret_cast<char *>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(v.size() * sizeof(double))) {
    throw DataError("checkpoint truncated: " + path);
  }
}

}  // namespace

void save_checkpoint(const std::string &path, const ToyModel &model,
                     const CheckpointMeta &meta) {
  const ModelConfig &c = model.config();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write checkpoint: " + path);
  out << "a2w-model v1\n";
  out << "manifest=" << (meta.manifest.empty() ? "-" : meta.manifest) << "\n";
  out << "dim=" << c.dim << "\n";
  out << "num_embeddings=" << c.num_embeddings << "\n";
  out << "context=" << c.context << "\n";
  out << "hidden=" << c.hidden << "\n";
  out << "feature_dim=" << c.feature_dim << "\n";
  out << "subsample=" << c.subsample << "\n";
  out << "seed=" << c.seed << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", c.learning_rate);
  out << "learning_rate=" << buf << "\n";
  out << "epochs=" << c.epochs << "\n";
  out << "batch_size=" << c.batch_size << "\n";
  out << "g_mode=" << to_string(meta.g_mode) << "\n";
  out << "combine=" << to_string(meta.combine) << "\n";
  out << "enc_dim=" << meta.encoder.dim << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", meta.encoder.decay);
  out << "enc_decay=" << buf << "\n";
  out << "enc_seed=" << meta.encoder.seed << "\n";
  out << "params=" << model.num_params() << "\n";
  out << "binary\n";
  write_doubles(out, model.w1());
  write_doubles(out, model.b1());
  write_doubles(out, model.w2());
  write_doubles(out, model.b2());
  if (!out) throw DataError("write failed: " + path);
}

ToyModel load_checkpoint(const std::string &path, CheckpointMeta *meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "a2w-model v1") {
    throw DataError("bad checkpoint header: " + path);
  }
  std::ostringstream kv_text;
  bool saw_binary = false;
  while (std::getline(in, line)) {
    if (line == "binary") {
      saw_binary = true;
      break;
    }
    kv_text << line << "\n";
  }
  if (!saw_binary) throw DataError("checkpoint missing binary marker: " + path);
  KvConfig kv = KvConfig::from_string(kv_text.str());
  ModelConfig c;
  c.dim = static_cast<int>(kv.get_int("dim", 0));
  c.num_embeddings = static_cast<int>(kv.get_int("num_embeddings", 0));
  c.context = static_cast<int>(kv.get_int("context", -1));
  c.hidden = static_cast<int>(kv.get_int("hidden", 0));
  c.feature_dim = static_cast<int>(kv.get_int("feature_dim", 0));
  c.subsample = static_cast<int>(kv.get_int("subsample", 0));
  c.seed = kv.get_u64("seed", 0);
  c.learning_rate = kv.get_double("learning_rate", 0.0);
  c.epochs = static_cast<int>(kv.get_int("epochs", 1));
  c.batch_size = static_cast<int>(kv.get_int("batch_size", 1));
  ToyModel model = ToyModel::init(c);
  if (meta != nullptr) {
    meta->g_mode = g_mode_from_string(kv.get_string("g_mode", "orth"));
    meta->combine = combine_mode_from_string(kv.get_string("combine", "sum"));
    meta->encoder.dim = static_cast<int>(kv.get_int("enc_dim", c.dim));
    meta->encoder.decay = kv.get_double("enc_decay", 0.75);
    meta->encoder.seed = kv.get_u64("enc_seed", 0);
    meta->manifest = kv.get_string("manifest", "-");
  }
  int64_t expect = kv.get_int("params", -1);
  if (expect != model.num_params()) {
    throw DataError("checkpoint param count " + std::to_string(expect) +
                    " does not match config (" +
                    std::to_string(model.num_params()) + "): " + path);
  }
  read_doubles(in, model.w1(), path);
  read_doubles(in, model.b1(), path);
  read_doubles(in, model.w2(), path);
  read_doubles(in, model.b2(), path);
  return model;
}

}  // namespace a2w
