// synth/corpus.h

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

#ifndef A2W_SYNTH_CORPUS_H_
#define A2W_SYNTH_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "lm/arpa-lm.h"
#include "pronlex/lexicon.h"
#include "util/common.h"
#include "util/kv-config.h"

namespace a2w {

struct CorpusSpec {
  int phoneme_count = 24;
  int feature_dim = 8;
  IntRange frames_per_phoneme{2, 4};
  double noise_sigma = 0.35;
  int64_t vocab_size = 160;
  int64_t contact_pool_size = 60;
  IntRange contacts_per_utterance{4, 12};
  int64_t utterance_count = 2000;       // training set size
  int64_t test_utterance_count = 400;
  int64_t overlap_utterance_count = 60;  // prefix-ambiguity test set
  IntRange sentence_len{3, 6};
  IntRange pron_len{2, 5};
  double multi_pron_fraction = 0.25;    // words that get a second pron
  double homophone_fraction = 0.0;      // words that reuse another's pron
  double prefix_pair_fraction = 0.30;   // vocab arranged as prefix pairs
  double contact_utterance_fraction = 0.5;  // test utts that speak a contact
  int carrier_count = 3;                // words that precede contacts
  uint64_t seed = 1;

  static CorpusSpec from_config(const KvConfig &kv);
  void validate() const;
};

// A contact-list entry: the dynamic vocabulary is per utterance.
struct Contact {
  std::string orth;
  std::vector<int> pron;  // phoneme ids under the corpus lexicon
};

// One synthetic utterance. Reference ids use the static lexicon; a spoken
// contact is referenced as (num_words + index into contacts) for words and
// (num_prons + index into contacts) for prons.
struct Utterance {
  std::string id;
  int feature_dim = 0;
  int64_t num_frames = 0;
  Vec frames;  // num_frames x feature_dim, row-major
  std::vector<int64_t> ref_words;
  std::vector<int64_t> ref_prons;
  std::vector<Contact> contacts;
  std::vector<bool> is_contact_mask;
  // Frame span [begin, end) of each reference word; generator ground truth.
  std::vector<std::pair<int64_t, int64_t>> word_spans;
};

// A prefix-ambiguous utterance: the pron of short_word is a strict prefix
// of the pron of long_word, and long_word is spoken over [span_begin,
// span_end).
struct OverlapCase {
  std::string utt_id;
  int64_t long_word = 0;
  int64_t short_word = 0;
  int64_t span_begin = 0;
  int64_t span_end = 0;
};

struct GeneratedCorpus {
  CorpusSpec spec;
  PronLexicon lexicon;
  std::vector<int64_t> carrier_words;
  std::vector<Contact> contact_pool;
  std::vector<Utterance> train;
  std::vector<Utterance> test;
  std::vector<Utterance> overlap;
  std::vector<OverlapCase> overlap_cases;
  NGramLM lm;
};

// Deterministic end-to-end generation: lexicon, phoneme prototypes, train
// and test sets, per-utterance contact lists, the prefix-ambiguity set and
// the class LM. Frames are per-phoneme prototype vectors repeated for a
// random duration plus i.i.d. Gaussian noise.
GeneratedCorpus generate(const CorpusSpec &spec);

// Word pairs (long, short) where some pron of `short` is a strict prefix of
// some pron of `long`. Up to `count` pairs in deterministic order; if fewer
// exist, returns them all and sets *found_fewer.
struct AmbiguousPair {
  int64_t long_word = 0;
  int64_t short_word = 0;
  int long_pron = 0;
  int short_pron = 0;
};
std::vector<AmbiguousPair> make_ambiguous_pairs(const PronLexicon &lex,
                                                int64_t count,
                                                bool *found_fewer = nullptr);

// The phoneme prototype table the generator derives from a spec (one
// feature_dim vector per phoneme). Exposed so tests can check that
// noise-free frames invert back to their phonemes.
std::vector<Vec> phoneme_prototypes(const CorpusSpec &spec);

// JSON Lines corpus file: one object per utterance with fields id, frames,
// ref_words, ref_prons, contacts, is_contact_mask.
void write_corpus_jsonl(const std::string &path,
                        const std::vector<Utterance> &utts,
                        const PronLexicon &lex);
std::vector<Utterance> read_corpus_jsonl(const std::string &path,
                                         const PronLexicon &lex);

// Contact pool TSV: <orthography>\t<phoneme> <phoneme> ...
void write_contacts_tsv(const std::string &path,
                        const std::vector<Contact> &pool,
                        const PronLexicon &lex);
std::vector<Contact> read_contacts_tsv(const std::string &path,
                                       const PronLexicon &lex);

// Overlap sidecar TSV: utt_id, long word id, short word id, span.
void write_overlap_tsv(const std::string &path,
                       const std::vector<OverlapCase> &cases);
std::vector<OverlapCase> read_overlap_tsv(const std::string &path);

}  // namespace a2w

#endif  // A2W_SYNTH_CORPUS_H_
