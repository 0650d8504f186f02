// lm/arpa-lm.cc

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

#include "lm/arpa-lm.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace a2w {

void NGramLM::set_order(int order) {
  if (order < 1 || order > 3) {
    throw DataError("lm: order must be 1, 2 or 3, got " +
                    std::to_string(order));
  }
  order_ = order;
  ngrams_.resize(order);
}

int NGramLM::token_id(const std::string &token) const {
  auto it = token_ids_.find(token);
  return it == token_ids_.end() ? -1 : it->second;
}

int NGramLM::intern(const std::string &token) {
  auto it = token_ids_.find(token);
  if (it != token_ids_.end()) return it->second;
  int id = static_cast<int>(vocab_.size());
  vocab_.push_back(token);
  token_ids_[token] = id;
  return id;
}

void NGramLM::add_ngram(const std::vector<std::string> &tokens,
                        double log10_prob, double log10_backoff) {
  if (order_ == 0) throw InternalError("lm: set_order before add_ngram");
  if (tokens.empty() || static_cast<int>(tokens.size()) > order_) {
    throw DataError("lm: n-gram length " + std::to_string(tokens.size()) +
                    " outside 1.." + std::to_string(order_));
  }
  std::vector<int> key;
  key.reserve(tokens.size());
  for (const std::string &t : tokens) key.push_back(intern(t));
  Entry &e = ngrams_[tokens.size() - 1][key];
  e.log10_prob = log10_prob;
  e.log10_backoff = log10_backoff;
  e.has_backoff = log10_backoff != 0.0;
}

LMState NGramLM::begin_state() const {
  LMState s;
  int bos = token_id(kBosSymbol);
  if (bos >= 0 && order_ > 1) s.history.push_back(bos);
  return s;
}

double NGramLM::log10_prob(const std::vector<int> &context, int token) const {
  std::vector<int> key(context);
  key.push_back(token);
  if (static_cast<int>(key.size()) <= order_) {
    auto it = ngrams_[key.size() - 1].find(key);
    if (it != ngrams_[key.size() - 1].end()) return it->second.log10_prob;
  }
  if (context.empty()) {
    // Unseen unigram: fall back to <unk>, or a floor if the model lacks one.
    int unk = token_id(kUnkSymbol);
    if (unk >= 0 && unk != token) return log10_prob({}, unk);
    return -99.0;
  }
  double backoff = 0.0;
  auto bit = ngrams_[context.size() - 1].find(context);
  if (bit != ngrams_[context.size() - 1].end()) {
    backoff = bit->second.log10_backoff;
  }
  std::vector<int> shorter(context.begin() + 1, context.end());
  return backoff + log10_prob(shorter, token);
}

std::pair<double, LMState> NGramLM::score(const LMState &state,
                                          const std::string &token,
                                          bool is_dynamic,
                                          int64_t contacts_count) const {
  if (order_ == 0) throw ConfigError("lm: model not loaded");
  if (is_dynamic && contacts_count < 1) {
    throw ConfigError("lm: dynamic word scored with contacts_count < 1");
  }
  const std::string &lookup = is_dynamic ? kClassSymbol : token;
  int id = token_id(lookup);
  if (id < 0) id = token_id(kUnkSymbol);
  double lp;
  if (id < 0) {
    lp = -99.0;
  } else {
    std::vector<int> context = state.history;
    if (static_cast<int>(context.size()) > order_ - 1) {
      context.erase(context.begin(),
                    context.end() - (order_ - 1));
    }
    lp = log10_prob(context, id);
  }
  if (is_dynamic) {
    // Uniform prior within the class: every contact splits the class mass.
    lp -= std::log10(static_cast<double>(contacts_count));
  }
  LMState next = state;
  if (order_ > 1) {
    if (id >= 0) next.history.push_back(id);
    while (static_cast<int>(next.history.size()) > order_ - 1) {
      next.history.erase(next.history.begin());
    }
  }
  return {lp, next};
}

void NGramLM::validate() const {
  // Listed probabilities for any context must not exceed unit mass; the
  // remainder is what backoff redistributes.
  for (int k = 0; k < order_; k++) {
    std::map<std::vector<int>, double> mass;
    for (const auto &[key, entry] : ngrams_[k]) {
      std::vector<int> context(key.begin(), key.end() - 1);
      mass[context] += std::pow(10.0, entry.log10_prob);
    }
    for (const auto &[context, m] : mass) {
      if (m > 1.0 + 1e-6) {
        std::string ctx;
        for (int id : context) ctx += vocab_[id] + " ";
        throw DataError("lm: probabilities for context '" + ctx +
                        "' sum to " + std::to_string(m));
      }
    }
  }
}

void NGramLM::dump(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write lm file: " + path);
  out << "\\data\\\n";
  for (int k = 0; k < order_; k++) {
    out << "ngram " << (k + 1) << "=" << ngrams_[k].size() << "\n";
  }
  char buf[64];
  for (int k = 0; k < order_; k++) {
    out << "\n\\" << (k + 1) << "-grams:\n";
    for (const auto &[key, entry] : ngrams_[k]) {
      std::snprintf(buf, sizeof(buf), "%.6f", entry.log10_prob);
      out << buf << '\t';
      for (size_t i = 0; i < key.size(); i++) {
        if (i > 0) out << ' ';
        out << vocab_[key[i]];
      }
      if (entry.has_backoff) {
        std::snprintf(buf, sizeof(buf), "%.6f", entry.log10_backoff);
        out << '\t' << buf;
      }
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
  if (!out) throw DataError("write failed: " + path);
}

NGramLM load_arpa(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lm file: " + path);
  NGramLM lm;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string &msg) {
    throw DataError(path + ":" + std::to_string(lineno) + ": " + msg);
  };

  // \data\ section.
  bool saw_data = false;
  std::vector<int64_t> declared;
  std::string pending;  // first section header, when no blank line precedes it
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (saw_data && !declared.empty()) break;
      continue;
    }
    if (line == "\\data\\") {
      saw_data = true;
      continue;
    }
    if (saw_data && !declared.empty() && line[0] == '\\') {
      pending = line;
      break;
    }
    if (!saw_data) fail("expected \\data\\ header, got '" + line + "'");
    int n = 0;
    long long count = -1;
    if (std::sscanf(line.c_str(), "ngram %d=%lld", &n, &count) != 2 ||
        n != static_cast<int>(declared.size()) + 1 || count < 0) {
      fail("bad ngram count line: '" + line + "'");
    }
    declared.push_back(count);
  }
  if (!saw_data || declared.empty()) fail("missing \\data\\ section");
  if (declared.size() > 3) fail("orders above 3 are not supported");
  lm.set_order(static_cast<int>(declared.size()));

  int current = 0;  // order of the section being read, 0 = none
  std::vector<int64_t> seen(declared.size(), 0);
  bool ended = false;
  bool use_pending = !pending.empty();
  while (use_pending || std::getline(in, line)) {
    if (use_pending) {
      line = pending;
      use_pending = false;
    } else {
      lineno++;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "\\end\\") {
      ended = true;
      break;
    }
    if (line[0] == '\\') {
      int n = 0;
      if (std::sscanf(line.c_str(), "\\%d-grams:", &n) != 1 || n < 1 ||
          n > lm.order()) {
        fail("bad section header: '" + line + "'");
      }
      current = n;
      continue;
    }
    if (current == 0) fail("entry outside any section: '" + line + "'");
    std::istringstream ls(line);
    double prob;
    if (!(ls >> prob)) fail("missing probability: '" + line + "'");
    std::vector<std::string> tokens(current);
    for (int i = 0; i < current; i++) {
      if (!(ls >> tokens[i])) fail("expected " + std::to_string(current) +
                                   " tokens: '" + line + "'");
    }
    double backoff = 0.0;
    ls >> backoff;  // optional
    lm.add_ngram(tokens, prob, backoff);
    seen[current - 1]++;
  }
  if (!ended) fail("missing \\end\\");
  for (size_t k = 0; k < declared.size(); k++) {
    if (seen[k] != declared[k]) {
      fail("\\" + std::to_string(k + 1) + "-grams: declared " +
           std::to_string(declared[k]) + " entries, found " +
           std::to_string(seen[k]));
    }
  }
  return lm;
}

}  // namespace a2w
