// evalkit/wer.h

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

#ifndef A2W_EVALKIT_WER_H_
#define A2W_EVALKIT_WER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace a2w {

enum class AlignOp { kHit, kSub, kDel, kIns };

struct AlignStep {
  AlignOp op;
  int64_t ref_pos;  // -1 for insertions
  int64_t hyp_pos;  // -1 for deletions
};

struct Alignment {
  std::vector<AlignStep> steps;
  int64_t hits = 0;
  int64_t subs = 0;
  int64_t dels = 0;
  int64_t inss = 0;

  int64_t distance() const { return subs + dels + inss; }
};

// Unit-cost Levenshtein alignment. Among equal-cost alignments the
// backtrace prefers, in order: hit, substitution, deletion, insertion,
// applied right-to-left, which biases matches leftward deterministically.
Alignment align(std::span<const std::string> ref,
                std::span<const std::string> hyp);

struct EvalCounts {
  int64_t hits = 0, subs = 0, dels = 0, inss = 0;
  int64_t ref_len = 0;
  int64_t contact_hits = 0, contact_subs = 0, contact_dels = 0;
  int64_t contact_ref = 0;
  int64_t utterances = 0;
};

// Folds one utterance's alignment into the totals. is_contact_mask flags
// reference positions holding contact words; insertions never touch a
// reference position and so never count toward the contact numbers.
void accumulate(EvalCounts *counts, const Alignment &alignment,
                std::span<const bool> is_contact_mask);

struct EvalReport {
  double wer = 0.0;                 // (S+I+D)/N_ref * 100
  std::optional<double> neer;       // (S+D)/N_contact * 100; absent when
                                    // the corpus has no contact references
  EvalCounts counts;

  std::string to_table() const;
  std::string to_json() const;
};

EvalReport make_report(const EvalCounts &counts);

}  // namespace a2w

#endif  // A2W_EVALKIT_WER_H_
