// pronlex/text-encoder.cc

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

#include "pronlex/text-encoder.h"

#include "util/rng.h"

namespace a2w {

void TextEncoderConfig::validate() const {
  if (dim < 1) throw ConfigError("text encoder: dim must be >= 1");
  if (!(decay > 0.0 && decay < 1.0)) {
    throw ConfigError("text encoder: decay must lie in (0, 1)");
  }
}

TextEncoder::TextEncoder(int phoneme_count, const TextEncoderConfig &cfg)
    : cfg_(cfg), phoneme_count_(phoneme_count) {
  cfg_.validate();
  if (phoneme_count < 1) {
    throw ConfigError("text encoder: phoneme_count must be >= 1");
  }
  Rng rng(Rng::derive(cfg_.seed, /*stream=*/0xe));
  table_.resize(static_cast<size_t>(phoneme_count) * cfg_.dim);
  for (double &v : table_) v = rng.normal();
}

Vec TextEncoder::encode(std::span<const int> phonemes) const {
  if (phonemes.empty()) throw InputError("encode: empty pron");
  Vec out(cfg_.dim, 0.0);
  double w = 1.0;
  for (int p : phonemes) {
    if (p < 0 || p >= phoneme_count_) {
      throw InputError("encode: phoneme id " + std::to_string(p) +
                       " out of range [0, " + std::to_string(phoneme_count_) +
                       ")");
    }
    const double *row = table_.data() + static_cast<size_t>(p) * cfg_.dim;
    for (int d = 0; d < cfg_.dim; d++) out[d] += w * row[d];
    w *= cfg_.decay;
  }
  return out;
}

Vec encode_pron(std::span<const int> phonemes, int phoneme_count,
                const TextEncoderConfig &cfg) {
  return TextEncoder(phoneme_count, cfg).encode(phonemes);
}

GMode g_mode_from_string(const std::string &s) {
  if (s == "orth") return GMode::kOrth;
  if (s == "pron") return GMode::kPron;
  throw ConfigError("unknown vocabulary mode: '" + s + "'");
}

std::string to_string(GMode mode) {
  return mode == GMode::kOrth ? "orth" : "pron";
}

VocabMatrix build_g_matrix(const PronLexicon &lex, GMode mode,
                           const TextEncoderConfig &cfg) {
  if (lex.num_words() == 0) throw ConfigError("build_g_matrix: empty lexicon");
  lex.validate();
  TextEncoder enc(lex.phonemes().size(), cfg);
  std::vector<std::pair<int64_t, Vec>> columns;
  if (mode == GMode::kPron) {
    columns.reserve(lex.num_prons());
    for (int64_t p = 0; p < lex.num_prons(); p++) {
      columns.emplace_back(p, enc.encode(lex.pron(p)));
    }
  } else {
    columns.reserve(lex.num_words());
    for (int64_t w = 0; w < lex.num_words(); w++) {
      int first_pron = lex.prons_of_word(w).front();
      columns.emplace_back(w, enc.encode(lex.pron(first_pron)));
    }
  }
  return VocabMatrix::from_columns(cfg.dim, columns);
}

std::vector<std::string> g_column_names(const PronLexicon &lex, GMode mode) {
  std::vector<std::string> names;
  if (mode == GMode::kPron) {
    names.reserve(lex.num_prons());
    for (int64_t p = 0; p < lex.num_prons(); p++) {
      // A pron column is shown as its first word plus the phoneme string.
      names.push_back(lex.orth(lex.words_of_pron(p).front()) + "/" +
                      lex.pron_string(p));
    }
  } else {
    names.reserve(lex.num_words());
    for (int64_t w = 0; w < lex.num_words(); w++) names.push_back(lex.orth(w));
  }
  return names;
}

}  // namespace a2w
