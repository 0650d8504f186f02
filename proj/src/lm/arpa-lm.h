// lm/arpa-lm.h

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

#ifndef A2W_LM_ARPA_LM_H_
#define A2W_LM_ARPA_LM_H_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "util/common.h"

namespace a2w {

// LM history: the last (order - 1) token ids, class-mapped. Dynamic words
// enter the history as the class symbol, never as themselves.
struct LMState {
  std::vector<int> history;
  bool operator==(const LMState &o) const { return history == o.history; }
};

// Backoff n-gram model (orders 1..3) read from ARPA text, with one reserved
// class symbol for contact names. All probabilities are log10, as in the
// file format. Immutable after load; scoring is const and thread-safe.
class NGramLM {
 public:
  static constexpr const char *kClassSymbol = "$CONTACT";
  static constexpr const char *kUnkSymbol = "<unk>";
  static constexpr const char *kBosSymbol = "<s>";

  NGramLM() = default;

  int order() const { return order_; }
  int64_t vocab_size() const { return static_cast<int64_t>(vocab_.size()); }
  bool has_token(const std::string &token) const {
    return token_ids_.count(token) > 0;
  }

  // Adds an n-gram entry (tokens oldest-first, log10 prob, log10 backoff).
  // Used by the ARPA reader and by code that synthesizes models directly.
  void add_ngram(const std::vector<std::string> &tokens, double log10_prob,
                 double log10_backoff = 0.0);
  void set_order(int order);

  // State for the start of an utterance: <s> if the model knows it.
  LMState begin_state() const;

  // Log10 probability of `token` following `state`, plus the successor
  // state. A dynamic word is first mapped to the class symbol, then a
  // uniform in-class penalty -log10(contacts_count) is added. Static words
  // missing from the vocabulary back off to <unk>.
  std::pair<double, LMState> score(const LMState &state,
                                   const std::string &token, bool is_dynamic,
                                   int64_t contacts_count) const;

  // Katz backoff lookup over token ids (context oldest-first).
  double log10_prob(const std::vector<int> &context, int token) const;

  // Checks that per-context probabilities do not exceed 1 (+eps).
  void validate() const;

  void dump(const std::string &path) const;  // ARPA text, %.6f

 private:
  friend NGramLM load_arpa(const std::string &path);

  int token_id(const std::string &token) const;  // -1 if absent
  int intern(const std::string &token);

  struct Entry {
    double log10_prob = 0.0;
    double log10_backoff = 0.0;
    bool has_backoff = false;
  };

  int order_ = 0;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> token_ids_;
  // One map per n-gram order; key is the full token-id tuple.
  std::vector<std::map<std::vector<int>, Entry>> ngrams_;
};

// Reads the ARPA subset: \data\ with ngram counts, \N-grams: sections,
// \end\. Malformed headers or count mismatches raise DataError with the
// offending line number.
NGramLM load_arpa(const std::string &path);

}  // namespace a2w

#endif  // A2W_LM_ARPA_LM_H_
