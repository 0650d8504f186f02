// pronlex/lexicon.h

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

#ifndef A2W_PRONLEX_LEXICON_H_
#define A2W_PRONLEX_LEXICON_H_

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "util/common.h"

namespace a2w {

// Phoneme symbols with dense ids, assigned in first-appearance order.
class PhonemeInventory {
 public:
  int add(const std::string &symbol);  // returns existing id if known
  int id_of(const std::string &symbol) const;  // throws InputError if unknown
  bool contains(const std::string &symbol) const {
    return ids_.count(symbol) > 0;
  }
  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string &symbol(int id) const { return symbols_[id]; }
  const std::vector<std::string> &symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> ids_;
};

// Word <-> pronunciation map. Word ids and pron ids are dense indices.
// A pron is a non-empty phoneme-id sequence; identical sequences listed for
// different words (homophones) share one pron id. A word's pron list keeps
// file order; the first listed pron is the one orthography embeddings use.
class PronLexicon {
 public:
  // Appends (creating the word and/or pron as needed). Rejects an exact
  // duplicate (word, pron) pair.
  void add(const std::string &orth, std::span<const int> phonemes);

  int64_t num_words() const { return static_cast<int64_t>(orths_.size()); }
  int64_t num_prons() const { return static_cast<int64_t>(prons_.size()); }

  const std::string &orth(int64_t word_id) const { return orths_[word_id]; }
  int64_t word_id(const std::string &orth) const;  // -1 if absent
  const std::vector<int> &pron(int64_t pron_id) const { return prons_[pron_id]; }
  const std::vector<int> &prons_of_word(int64_t word_id) const {
    return word_to_prons_[word_id];
  }
  const std::vector<int> &words_of_pron(int64_t pron_id) const {
    return pron_to_words_[pron_id];
  }

  PhonemeInventory &phonemes() { return phonemes_; }
  const PhonemeInventory &phonemes() const { return phonemes_; }

  // Checks the structural invariants: every word has a pron, every pron has
  // a word, and the two maps are exact inverses.
  void validate() const;

  std::string pron_string(int64_t pron_id) const;  // symbols joined by ' '

 private:
  PhonemeInventory phonemes_;
  std::vector<std::string> orths_;
  std::unordered_map<std::string, int64_t> word_ids_;
  std::vector<std::vector<int>> prons_;
  std::unordered_map<std::string, int> pron_ids_;  // key: ids joined by ','
  std::vector<std::vector<int>> word_to_prons_;
  std::vector<std::vector<int>> pron_to_words_;
};

// Lexicon file: UTF-8 TSV, one line per (word, pron):
//   <orthography>\t<phoneme> <phoneme> ...
// Duplicate orthographies accumulate prons; exact duplicate (word, pron)
// lines are rejected.
PronLexicon read_lexicon_tsv(const std::string &path);
void write_lexicon_tsv(const std::string &path, const PronLexicon &lex);

// Eq.-style collapse of pron posteriors to word scores: each word takes the
// max over its prons' posteriors, blank (index 0) passes through unchanged,
// and nothing is renormalized (homophones duplicate mass by design).
// Input length must be 1 + num_prons + dynamic_count; dynamic entries map
// 1:1 onto dynamic words after the static region.
Vec collapse_to_words(std::span<const double> pron_posteriors,
                      const PronLexicon &lex, int64_t dynamic_count = 0);

}  // namespace a2w

#endif  // A2W_PRONLEX_LEXICON_H_
