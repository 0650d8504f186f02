// pronlex/text-encoder.h

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

#ifndef A2W_PRONLEX_TEXT_ENCODER_H_
#define A2W_PRONLEX_TEXT_ENCODER_H_

#include <cstdint>
#include <span>
#include <string>

#include "embedcore/vocab-matrix.h"
#include "pronlex/lexicon.h"
#include "util/common.h"

namespace a2w {

struct TextEncoderConfig {
  int dim = 40;
  double decay = 0.75;  // must lie in (0, 1)
  uint64_t seed = 17;

  void validate() const;
};

// Deterministic toy text encoder: a pron maps to
//   sum_l decay^l * E[ph_l]
// where E is a fixed per-phoneme matrix drawn unit-normal from the seed.
// The geometric decay makes early phonemes dominate, so prons sharing a
// prefix land close together, the way acoustically confusable words should.
class TextEncoder {
 public:
  TextEncoder(int phoneme_count, const TextEncoderConfig &cfg);

  Vec encode(std::span<const int> phonemes) const;
  int dim() const { return cfg_.dim; }
  const TextEncoderConfig &config() const { return cfg_; }
  int phoneme_count() const { return phoneme_count_; }

 private:
  TextEncoderConfig cfg_;
  int phoneme_count_;
  Vec table_;  // phoneme_count x dim, row-major
};

// One-shot form of the above.
Vec encode_pron(std::span<const int> phonemes, int phoneme_count,
                const TextEncoderConfig &cfg);

// Which unit the vocabulary matrix is built over.
enum class GMode { kOrth, kPron };
GMode g_mode_from_string(const std::string &s);
std::string to_string(GMode mode);

// Builds the frozen matrix from a lexicon. Pron mode: one column per pron,
// label = pron id. Orth mode: one column per word, label = word id, encoded
// from the word's first listed pron (a multi-sound word is deliberately
// squeezed into a single vector, the ambiguity pron mode removes).
VocabMatrix build_g_matrix(const PronLexicon &lex, GMode mode,
                           const TextEncoderConfig &cfg);

// Display names for the columns of a matrix built by build_g_matrix.
std::vector<std::string> g_column_names(const PronLexicon &lex, GMode mode);

}  // namespace a2w

#endif  // A2W_PRONLEX_TEXT_ENCODER_H_
