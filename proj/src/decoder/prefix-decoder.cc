// decoder/prefix-decoder.cc

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

#include "decoder/prefix-decoder.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "util/logmath.h"

namespace a2w {

namespace {

constexpr double kLn10 = 2.302585092994045684;

struct Hyp {
  double p_blank = kLogZero;     // log P(prefix, ends in blank)
  double p_nonblank = kLogZero;  // log P(prefix, ends in its last word)
  double lm_log10 = 0.0;         // accumulated LM score, log10
  LMState lm_state;
};

double hyp_score(const Hyp &h, double lm_scale) {
  return log_add(h.p_blank, h.p_nonblank) + lm_scale * kLn10 * h.lm_log10;
}

}  // namespace

void DecoderConfig::validate() const {
  if (beam_width < 1) throw ConfigError("decoder: beam_width must be >= 1");
  if (top_k_posteriors < 1) {
    throw ConfigError("decoder: top_k_posteriors must be >= 1");
  }
  if (blank_divisor < 1.0) {
    throw ConfigError("decoder: blank_divisor must be >= 1");
  }
}

Vec apply_blank_heuristic(std::span<const double> posteriors, double divisor) {
  if (divisor < 1.0) {
    throw ConfigError("blank heuristic: divisor must be >= 1, got " +
                      std::to_string(divisor));
  }
  Vec out(posteriors.begin(), posteriors.end());
  if (!out.empty()) out[0] /= divisor;
  return out;
}

Vec top_k_prune(std::span<const double> posteriors, int k) {
  if (k < 1) throw ConfigError("top_k_prune: k must be >= 1");
  const int64_t n = static_cast<int64_t>(posteriors.size()) - 1;
  Vec out(posteriors.size(), 0.0);
  if (posteriors.empty()) return out;
  out[0] = posteriors[0];
  if (n <= k) {
    std::copy(posteriors.begin() + 1, posteriors.end(), out.begin() + 1);
    return out;
  }
  std::vector<int64_t> idx(n);
  for (int64_t i = 0; i < n; i++) idx[i] = i;
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                    [&](int64_t a, int64_t b) {
                      double pa = posteriors[1 + a], pb = posteriors[1 + b];
                      if (pa != pb) return pa > pb;
                      return a < b;  // ties keep the lower label id
                    });
  for (int i = 0; i < k; i++) out[1 + idx[i]] = posteriors[1 + idx[i]];
  return out;
}

DecodeResult decode(std::span<const Vec> posterior_rows,
                    const DecodeVocab &vocab, const NGramLM *lm,
                    const DecoderConfig &cfg) {
  cfg.validate();
  DecodeResult result;
  if (posterior_rows.empty()) return result;

  using Prefix = std::vector<int64_t>;
  std::map<Prefix, Hyp> beams;
  {
    Hyp root;
    root.p_blank = 0.0;
    if (lm != nullptr) root.lm_state = lm->begin_state();
    beams[{}] = root;
  }

  // Extends prefix scoring lazily; the LM value of a prefix is a pure
  // function of the word sequence, so whichever parent creates the entry
  // first writes the same state.
  auto extend_lm = [&](const Hyp &parent, int64_t word) {
    Hyp child;
    child.lm_log10 = parent.lm_log10;
    child.lm_state = parent.lm_state;
    if (lm != nullptr) {
      auto [lp, next] = lm->score(parent.lm_state, vocab.orths[word],
                                  vocab.is_dynamic(word), vocab.contacts_count);
      child.lm_log10 += lp;
      child.lm_state = next;
    }
    return child;
  };

  std::vector<int64_t> kept;
  for (const Vec &row : posterior_rows) {
    Vec adjusted = apply_blank_heuristic(row, cfg.blank_divisor);
    Vec pruned = top_k_prune(adjusted, cfg.top_k_posteriors);
    const double lp_blank =
        pruned[0] > 0.0 ? std::log(pruned[0]) : kLogZero;
    kept.clear();
    for (int64_t w = 0; w + 1 < static_cast<int64_t>(pruned.size()); w++) {
      if (pruned[1 + w] > 0.0) kept.push_back(w);
    }

    std::map<Prefix, Hyp> next_beams;
    for (const auto &[prefix, hyp] : beams) {
      const double total_in = log_add(hyp.p_blank, hyp.p_nonblank);
      const int64_t last =
          prefix.empty() ? -1 : prefix.back();

      // Blank keeps the prefix.
      {
        auto it = next_beams.find(prefix);
        if (it == next_beams.end()) {
          Hyp carry;
          carry.lm_log10 = hyp.lm_log10;
          carry.lm_state = hyp.lm_state;
          it = next_beams.emplace(prefix, carry).first;
        }
        it->second.p_blank = log_add(it->second.p_blank, total_in + lp_blank);
      }

      for (int64_t w : kept) {
        const double lp_w = std::log(pruned[1 + w]);
        if (w == last) {
          // Same word again without a blank gap: merged repeat.
          auto it = next_beams.find(prefix);
          if (it == next_beams.end()) {
            Hyp carry;
            carry.lm_log10 = hyp.lm_log10;
            carry.lm_state = hyp.lm_state;
            it = next_beams.emplace(prefix, carry).first;
          }
          it->second.p_nonblank =
              log_add(it->second.p_nonblank, hyp.p_nonblank + lp_w);
          // Blank-separated repeat starts a new copy of the word.
          Prefix np = prefix;
          np.push_back(w);
          auto nit = next_beams.find(np);
          if (nit == next_beams.end()) {
            nit = next_beams.emplace(np, extend_lm(hyp, w)).first;
          }
          nit->second.p_nonblank =
              log_add(nit->second.p_nonblank, hyp.p_blank + lp_w);
        } else {
          Prefix np = prefix;
          np.push_back(w);
          auto nit = next_beams.find(np);
          if (nit == next_beams.end()) {
            nit = next_beams.emplace(np, extend_lm(hyp, w)).first;
          }
          nit->second.p_nonblank =
              log_add(nit->second.p_nonblank, total_in + lp_w);
        }
      }
    }

    // Beam pruning; ties prefer the lexicographically smaller prefix, which
    // std::map iteration order already provides via stable_sort.
    std::vector<std::pair<const Prefix *, const Hyp *>> ranked;
    ranked.reserve(next_beams.size());
    for (const auto &kv : next_beams) ranked.emplace_back(&kv.first, &kv.second);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](const auto &a, const auto &b) {
                       return hyp_score(*a.second, cfg.lm_scale) >
                              hyp_score(*b.second, cfg.lm_scale);
                     });
    std::map<Prefix, Hyp> pruned_beams;
    const size_t keep = std::min<size_t>(cfg.beam_width, ranked.size());
    for (size_t i = 0; i < keep; i++) {
      pruned_beams.emplace(*ranked[i].first, *ranked[i].second);
    }
    beams.swap(pruned_beams);
  }

  const Prefix *best_prefix = nullptr;
  const Hyp *best_hyp = nullptr;
  double best = kLogZero;
  for (const auto &[prefix, hyp] : beams) {
    double s = hyp_score(hyp, cfg.lm_scale);
    if (best_prefix == nullptr || s > best) {
      best_prefix = &prefix;
      best_hyp = &hyp;
      best = s;
    }
  }
  result.words = *best_prefix;
  result.score = hyp_score(*best_hyp, cfg.lm_scale);
  return result;
}

}  // namespace a2w
