// evalkit/wer.cc

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

#include "evalkit/wer.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "util/common.h"

namespace a2w {

Alignment align(std::span<const std::string> ref,
                std::span<const std::string> hyp) {
  const int64_t I = static_cast<int64_t>(ref.size());
  const int64_t J = static_cast<int64_t>(hyp.size());
  std::vector<int64_t> dp((I + 1) * (J + 1));
  auto at = [&](int64_t i, int64_t j) -> int64_t & { return dp[i * (J + 1) + j]; };
  for (int64_t i = 0; i <= I; i++) at(i, 0) = i;
  for (int64_t j = 0; j <= J; j++) at(0, j) = j;
  for (int64_t i = 1; i <= I; i++) {
    for (int64_t j = 1; j <= J; j++) {
      int64_t sub = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      int64_t del = at(i - 1, j) + 1;
      int64_t ins = at(i, j - 1) + 1;
      at(i, j) = std::min({sub, del, ins});
    }
  }

  Alignment a;
  int64_t i = I, j = J;
  std::vector<AlignStep> rev;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        at(i, j) == at(i - 1, j - 1)) {
      rev.push_back({AlignOp::kHit, i - 1, j - 1});
      i--;
      j--;
    } else if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + 1) {
      rev.push_back({AlignOp::kSub, i - 1, j - 1});
      i--;
      j--;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      rev.push_back({AlignOp::kDel, i - 1, -1});
      i--;
    } else {
      rev.push_back({AlignOp::kIns, -1, j - 1});
      j--;
    }
  }
  a.steps.assign(rev.rbegin(), rev.rend());
  for (const AlignStep &s : a.steps) {
    switch (s.op) {
      case AlignOp::kHit: a.hits++; break;
      case AlignOp::kSub: a.subs++; break;
      case AlignOp::kDel: a.dels++; break;
      case AlignOp::kIns: a.inss++; break;
    }
  }
  return a;
}

void accumulate(EvalCounts *counts, const Alignment &alignment,
                std::span<const bool> is_contact_mask) {
  counts->utterances++;
  counts->hits += alignment.hits;
  counts->subs += alignment.subs;
  counts->dels += alignment.dels;
  counts->inss += alignment.inss;
  counts->ref_len += alignment.hits + alignment.subs + alignment.dels;
  for (const AlignStep &s : alignment.steps) {
    if (s.ref_pos < 0) continue;
    if (s.ref_pos >= static_cast<int64_t>(is_contact_mask.size())) {
      throw InternalError("accumulate: contact mask shorter than reference");
    }
    if (!is_contact_mask[s.ref_pos]) continue;
    counts->contact_ref++;
    switch (s.op) {
      case AlignOp::kHit: counts->contact_hits++; break;
      case AlignOp::kSub: counts->contact_subs++; break;
      case AlignOp::kDel: counts->contact_dels++; break;
      case AlignOp::kIns: break;
    }
  }
}

EvalReport make_report(const EvalCounts &counts) {
  EvalReport r;
  r.counts = counts;
  r.wer = counts.ref_len == 0
              ? 0.0
              : 100.0 * static_cast<double>(counts.subs + counts.inss +
                                            counts.dels) /
                    static_cast<double>(counts.ref_len);
  if (counts.contact_ref > 0) {
    r.neer = 100.0 *
             static_cast<double>(counts.contact_subs + counts.contact_dels) /
             static_cast<double>(counts.contact_ref);
  }
  return r;
}

std::string EvalReport::to_table() const {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-12s %10.2f%%\n", "WER", wer);
  out << buf;
  if (neer.has_value()) {
    std::snprintf(buf, sizeof(buf), "%-12s %10.2f%%\n", "NEER", *neer);
    out << buf;
  } else {
    out << "NEER         (no contact references)\n";
  }
  std::snprintf(buf, sizeof(buf),
                "%-12s hits=%lld subs=%lld dels=%lld inss=%lld refs=%lld\n",
                "counts", static_cast<long long>(counts.hits),
                static_cast<long long>(counts.subs),
                static_cast<long long>(counts.dels),
                static_cast<long long>(counts.inss),
                static_cast<long long>(counts.ref_len));
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "%-12s hits=%lld subs=%lld dels=%lld refs=%lld\n", "contacts",
                static_cast<long long>(counts.contact_hits),
                static_cast<long long>(counts.contact_subs),
                static_cast<long long>(counts.contact_dels),
                static_cast<long long>(counts.contact_ref));
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-12s %lld\n", "utterances",
                static_cast<long long>(counts.utterances));
  out << buf;
  return out.str();
}

std::string EvalReport::to_json() const {
  nlohmann::json j;
  j["wer"] = wer;
  if (neer.has_value()) {
    j["neer"] = *neer;
  } else {
    j["neer"] = nullptr;
  }
  j["hits"] = counts.hits;
  j["substitutions"] = counts.subs;
  j["deletions"] = counts.dels;
  j["insertions"] = counts.inss;
  j["ref_words"] = counts.ref_len;
  j["contact_hits"] = counts.contact_hits;
  j["contact_substitutions"] = counts.contact_subs;
  j["contact_deletions"] = counts.contact_dels;
  j["contact_ref_words"] = counts.contact_ref;
  j["utterances"] = counts.utterances;
  return j.dump(2);
}

}  // namespace a2w
