// decoder/prefix-decoder.h

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

#ifndef A2W_DECODER_PREFIX_DECODER_H_
#define A2W_DECODER_PREFIX_DECODER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lm/arpa-lm.h"
#include "util/common.h"

namespace a2w {

struct DecoderConfig {
  int beam_width = 16;
  int top_k_posteriors = 48;  // words kept per frame, plus blank
  double lm_scale = 0.0;
  double blank_divisor = 1.0;  // >= 1

  void validate() const;
};

// What the decoder needs to know about its label space: an orthography per
// word label (for LM lookup and output) and where the dynamic region starts.
struct DecodeVocab {
  std::vector<std::string> orths;
  int64_t static_count = 0;
  int64_t contacts_count = 0;  // size of the utterance's contact list

  bool is_dynamic(int64_t label) const { return label >= static_count; }
};

struct DecodeResult {
  std::vector<int64_t> words;
  double score = 0.0;  // log p(blank/non-blank merged) + lm_scale * ln10 * lm
};

// Divides the blank posterior (index 0) by `divisor`, leaving every other
// entry untouched and not renormalizing.
Vec apply_blank_heuristic(std::span<const double> posteriors, double divisor);

// Keeps blank plus the k largest word entries; dropped words become exact
// zeros (log-prob -inf downstream). Ties at the k-th value keep the lower
// label id.
Vec top_k_prune(std::span<const double> posteriors, int k);

// CTC prefix beam search over per-frame word posteriors with shallow LM
// fusion at word boundaries. Dynamic labels are scored through the LM class
// symbol. Deterministic: exact score ties prefer the lexicographically
// smaller prefix. An empty posterior sequence yields an empty result.
DecodeResult decode(std::span<const Vec> posterior_rows,
                    const DecodeVocab &vocab, const NGramLM *lm,
                    const DecoderConfig &cfg);

}  // namespace a2w

#endif  // A2W_DECODER_PREFIX_DECODER_H_
