// pronlex/lexicon.cc

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

#include "pronlex/lexicon.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace a2w {

int PhonemeInventory::add(const std::string &symbol) {
  auto it = ids_.find(symbol);
  if (it != ids_.end()) return it->second;
  int id = size();
  symbols_.push_back(symbol);
  ids_[symbol] = id;
  return id;
}

int PhonemeInventory::id_of(const std::string &symbol) const {
  auto it = ids_.find(symbol);
  if (it == ids_.end()) throw InputError("unknown phoneme: '" + symbol + "'");
  return it->second;
}

namespace {

std::string pron_key(std::span<const int> phonemes) {
  std::string key;
  for (int p : phonemes) {
    key += std::to_string(p);
    key += ',';
  }
  return key;
}

}  // namespace

void PronLexicon::add(const std::string &orth, std::span<const int> phonemes) {
  if (orth.empty()) throw InputError("lexicon: empty orthography");
  if (phonemes.empty()) {
    throw InputError("lexicon: empty pron for word '" + orth + "'");
  }
  for (int p : phonemes) {
    if (p < 0 || p >= phonemes_.size()) {
      throw InputError("lexicon: phoneme id " + std::to_string(p) +
                       " out of range for word '" + orth + "'");
    }
  }
  int64_t wid;
  auto wit = word_ids_.find(orth);
  if (wit == word_ids_.end()) {
    wid = num_words();
    orths_.push_back(orth);
    word_ids_[orth] = wid;
    word_to_prons_.emplace_back();
  } else {
    wid = wit->second;
  }
  std::string key = pron_key(phonemes);
  int pid;
  auto pit = pron_ids_.find(key);
  if (pit == pron_ids_.end()) {
    pid = static_cast<int>(num_prons());
    prons_.emplace_back(phonemes.begin(), phonemes.end());
    pron_ids_[key] = pid;
    pron_to_words_.emplace_back();
  } else {
    pid = pit->second;
  }
  std::vector<int> &wp = word_to_prons_[wid];
  if (std::find(wp.begin(), wp.end(), pid) != wp.end()) {
    throw DataError("lexicon: duplicate (word, pron) pair for '" + orth + "'");
  }
  wp.push_back(pid);
  pron_to_words_[pid].push_back(static_cast<int>(wid));
}

int64_t PronLexicon::word_id(const std::string &orth) const {
  auto it = word_ids_.find(orth);
  return it == word_ids_.end() ? -1 : it->second;
}

void PronLexicon::validate() const {
  for (int64_t w = 0; w < num_words(); w++) {
    if (word_to_prons_[w].empty()) {
      throw DataError("lexicon: word '" + orths_[w] + "' has no prons");
    }
    for (int p : word_to_prons_[w]) {
      const std::vector<int> &pw = pron_to_words_[p];
      if (std::find(pw.begin(), pw.end(), w) == pw.end()) {
        throw DataError("lexicon: pron_to_words missing inverse of word '" +
                        orths_[w] + "'");
      }
    }
  }
  for (int64_t p = 0; p < num_prons(); p++) {
    if (pron_to_words_[p].empty()) {
      throw DataError("lexicon: pron " + std::to_string(p) + " has no words");
    }
    for (int w : pron_to_words_[p]) {
      const std::vector<int> &wp = word_to_prons_[w];
      if (std::find(wp.begin(), wp.end(), static_cast<int>(p)) == wp.end()) {
        throw DataError("lexicon: word_to_prons missing inverse of pron " +
                        std::to_string(p));
      }
    }
  }
}

std::string PronLexicon::pron_string(int64_t pron_id) const {
  std::string s;
  const std::vector<int> &ph = prons_[pron_id];
  for (size_t i = 0; i < ph.size(); i++) {
    if (i > 0) s += ' ';
    s += phonemes_.symbol(ph[i]);
  }
  return s;
}

PronLexicon read_lexicon_tsv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon file: " + path);
  PronLexicon lex;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError(path + ":" + std::to_string(lineno) + ": missing tab");
    }
    std::string orth = line.substr(0, tab);
    std::istringstream ps(line.substr(tab + 1));
    std::vector<int> phonemes;
    std::string sym;
    while (ps >> sym) phonemes.push_back(lex.phonemes().add(sym));
    try {
      lex.add(orth, phonemes);
    } catch (const Error &e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return lex;
}

void write_lexicon_tsv(const std::string &path, const PronLexicon &lex) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write lexicon file: " + path);
  for (int64_t w = 0; w < lex.num_words(); w++) {
    for (int p : lex.prons_of_word(w)) {
      out << lex.orth(w) << '\t' << lex.pron_string(p) << '\n';
    }
  }
  if (!out) throw DataError("write failed: " + path);
}

Vec collapse_to_words(std::span<const double> pron_posteriors,
                      const PronLexicon &lex, int64_t dynamic_count) {
  const int64_t m = lex.num_prons();
  const int64_t n = lex.num_words();
  if (static_cast<int64_t>(pron_posteriors.size()) != 1 + m + dynamic_count) {
    throw ConfigError("collapse_to_words: got " +
                      std::to_string(pron_posteriors.size()) +
                      " posteriors, expected " +
                      std::to_string(1 + m + dynamic_count));
  }
  Vec out(1 + n + dynamic_count);
  out[0] = pron_posteriors[0];  // blank passes through as-is
  for (int64_t w = 0; w < n; w++) {
    const std::vector<int> &prons = lex.prons_of_word(w);
    if (prons.empty()) {
      throw DataError("collapse_to_words: word '" + lex.orth(w) +
                      "' has no prons");
    }
    double best = pron_posteriors[1 + prons[0]];
    for (size_t i = 1; i < prons.size(); i++) {
      best = std::max(best, pron_posteriors[1 + prons[i]]);
    }
    out[1 + w] = best;
  }
  for (int64_t j = 0; j < dynamic_count; j++) {
    out[1 + n + j] = pron_posteriors[1 + m + j];
  }
  return out;
}

}  // namespace a2w
