// synth/corpus.cc

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

#include "synth/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "util/rng.h"

namespace a2w {

namespace {

// ARPAbet-flavored symbols; synthesized names beyond the list.
const char *kPhonemeNames[] = {
    "aa", "ae", "ah", "ao", "aw", "ay", "b",  "ch", "d",  "dh",
    "eh", "er", "ey", "f",  "g",  "hh", "ih", "iy", "jh", "k",
    "l",  "m",  "n",  "ng", "ow", "oy", "p",  "r",  "s",  "sh",
    "t",  "th", "uh", "uw", "v",  "w",  "y",  "z",  "zh"};
constexpr int kNamedPhonemes = 39;

std::string phoneme_name(int i) {
  if (i < kNamedPhonemes) return kPhonemeNames[i];
  return "x" + std::to_string(i - kNamedPhonemes);
}

std::string pron_key(const std::vector<int> &p) {
  std::string key;
  for (int v : p) {
    key += std::to_string(v);
    key += ',';
  }
  return key;
}

// Orthography derived from the pron's leading letters, deduplicated with a
// numeric suffix.
std::string orth_from_pron(const std::vector<int> &pron, bool capitalize,
                           std::unordered_set<std::string> *taken) {
  std::string base;
  for (int p : pron) base += phoneme_name(p)[0];
  if (capitalize && !base.empty()) base[0] = std::toupper(base[0]);
  std::string orth = base;
  int suffix = 2;
  while (!taken->insert(orth).second) {
    orth = base + std::to_string(suffix++);
  }
  return orth;
}

struct PronFactory {
  Rng *rng;
  int phoneme_count;
  std::unordered_set<std::string> used;

  std::vector<int> random(IntRange len_range) {
    int64_t len = rng->uniform_int(len_range.lo, len_range.hi);
    std::vector<int> p(len);
    for (auto &v : p) v = static_cast<int>(rng->uniform_int(0, phoneme_count - 1));
    return p;
  }

  std::vector<int> fresh(IntRange len_range) {
    for (int attempt = 0; attempt < 1000; attempt++) {
      std::vector<int> p = random(len_range);
      if (used.insert(pron_key(p)).second) return p;
    }
    throw DataError(
        "corpus generation: vocab_size exceeds the distinct pron "
        "combinations available; increase phoneme_count or pron_len");
  }

  // Fresh pron extending `prefix` by 1..max_extra phonemes.
  std::vector<int> fresh_extension(const std::vector<int> &prefix,
                                   int max_extra) {
    for (int attempt = 0; attempt < 1000; attempt++) {
      std::vector<int> p = prefix;
      int64_t extra = rng->uniform_int(1, max_extra);
      for (int64_t i = 0; i < extra; i++) {
        p.push_back(static_cast<int>(rng->uniform_int(0, phoneme_count - 1)));
      }
      if (used.insert(pron_key(p)).second) return p;
    }
    throw DataError("corpus generation: cannot extend pron to a fresh one");
  }

  // Fresh pron keeping the first phoneme, resampling the rest.
  std::vector<int> fresh_variant(const std::vector<int> &first) {
    for (int attempt = 0; attempt < 1000; attempt++) {
      std::vector<int> p = first;
      for (size_t i = 1; i < p.size(); i++) {
        p[i] = static_cast<int>(rng->uniform_int(0, phoneme_count - 1));
      }
      if (used.insert(pron_key(p)).second) return p;
    }
    throw DataError("corpus generation: cannot make a fresh pron variant");
  }
};

// Endless shuffled stream over all (word, pron) pairs, so every pron gets
// spoken in training.
struct TokenQueue {
  std::vector<std::pair<int64_t, int>> all;  // (word id, pron id)
  size_t idx = 0;
  Rng *rng;

  std::pair<int64_t, int> next() {
    if (idx >= all.size()) {
      for (size_t i = all.size() - 1; i > 0; i--) {
        size_t j = static_cast<size_t>(rng->uniform_int(0, static_cast<int64_t>(i)));
        std::swap(all[i], all[j]);
      }
      idx = 0;
    }
    return all[idx++];
  }
};

struct SpokenToken {
  int64_t ref_word;
  int64_t ref_pron;
  std::vector<int> phonemes;
  bool is_contact;
};

}  // namespace

CorpusSpec CorpusSpec::from_config(const KvConfig &kv) {
  CorpusSpec s;
  s.phoneme_count = static_cast<int>(kv.get_int("phoneme_count", s.phoneme_count));
  s.feature_dim = static_cast<int>(kv.get_int("feature_dim", s.feature_dim));
  s.frames_per_phoneme = kv.get_range("frames_per_phoneme", s.frames_per_phoneme);
  s.noise_sigma = kv.get_double("noise_sigma", s.noise_sigma);
  s.vocab_size = kv.get_int("vocab_size", s.vocab_size);
  s.contact_pool_size = kv.get_int("contact_pool_size", s.contact_pool_size);
  s.contacts_per_utterance =
      kv.get_range("contacts_per_utterance", s.contacts_per_utterance);
  s.utterance_count = kv.get_int("utterance_count", s.utterance_count);
  s.test_utterance_count =
      kv.get_int("test_utterance_count", s.test_utterance_count);
  s.overlap_utterance_count =
      kv.get_int("overlap_utterance_count", s.overlap_utterance_count);
  s.sentence_len = kv.get_range("sentence_len", s.sentence_len);
  s.pron_len = kv.get_range("pron_len", s.pron_len);
  s.multi_pron_fraction = kv.get_double("multi_pron_fraction", s.multi_pron_fraction);
  s.homophone_fraction = kv.get_double("homophone_fraction", s.homophone_fraction);
  s.prefix_pair_fraction =
      kv.get_double("prefix_pair_fraction", s.prefix_pair_fraction);
  s.contact_utterance_fraction =
      kv.get_double("contact_utterance_fraction", s.contact_utterance_fraction);
  s.carrier_count = static_cast<int>(kv.get_int("carrier_count", s.carrier_count));
  s.seed = kv.get_u64("seed", s.seed);
  return s;
}

void CorpusSpec::validate() const {
  if (phoneme_count < 2) throw ConfigError("corpus: phoneme_count must be >= 2");
  if (feature_dim < 1) throw ConfigError("corpus: feature_dim must be >= 1");
  if (frames_per_phoneme.lo < 1) {
    throw ConfigError("corpus: frames_per_phoneme must be >= 1");
  }
  if (noise_sigma < 0) throw ConfigError("corpus: noise_sigma must be >= 0");
  if (vocab_size < 1) throw ConfigError("corpus: vocab_size must be >= 1");
  if (contact_pool_size < 0) {
    throw ConfigError("corpus: contact_pool_size must be >= 0");
  }
  if (contacts_per_utterance.lo < 0) {
    throw ConfigError("corpus: contacts_per_utterance must be >= 0");
  }
  if (utterance_count < 0 || test_utterance_count < 0 ||
      overlap_utterance_count < 0) {
    throw ConfigError("corpus: utterance counts must be >= 0");
  }
  if (sentence_len.lo < 1) throw ConfigError("corpus: sentence_len must be >= 1");
  if (pron_len.lo < 1) throw ConfigError("corpus: pron_len must be >= 1");
  if (pron_len.hi < 2 && prefix_pair_fraction > 0) {
    throw ConfigError("corpus: prefix pairs need pron_len.hi >= 2");
  }
  for (double f : {multi_pron_fraction, homophone_fraction,
                   prefix_pair_fraction, contact_utterance_fraction}) {
    if (f < 0 || f > 1) throw ConfigError("corpus: fractions must lie in [0,1]");
  }
  if (carrier_count < 1) throw ConfigError("corpus: carrier_count must be >= 1");
  int64_t num_pairs = static_cast<int64_t>(vocab_size * prefix_pair_fraction / 2);
  int64_t num_homo = static_cast<int64_t>(vocab_size * homophone_fraction);
  int64_t plain = vocab_size - 2 * num_pairs - num_homo;
  if (plain < carrier_count) {
    throw ConfigError("corpus: not enough plain words for carriers");
  }
}

std::vector<Vec> phoneme_prototypes(const CorpusSpec &spec) {
  Rng rng(Rng::derive(spec.seed, 2));
  std::vector<Vec> protos(spec.phoneme_count, Vec(spec.feature_dim));
  for (auto &p : protos) {
    for (double &v : p) v = rng.normal();
  }
  return protos;
}

std::vector<AmbiguousPair> make_ambiguous_pairs(const PronLexicon &lex,
                                                int64_t count,
                                                bool *found_fewer) {
  std::vector<AmbiguousPair> pairs;
  if (found_fewer != nullptr) *found_fewer = false;
  for (int64_t wl = 0; wl < lex.num_words() && static_cast<int64_t>(pairs.size()) < count; wl++) {
    for (int pl : lex.prons_of_word(wl)) {
      const std::vector<int> &long_pron = lex.pron(pl);
      for (int64_t ws = 0; ws < lex.num_words(); ws++) {
        if (ws == wl) continue;
        for (int ps : lex.prons_of_word(ws)) {
          const std::vector<int> &short_pron = lex.pron(ps);
          if (short_pron.size() >= long_pron.size()) continue;
          if (std::equal(short_pron.begin(), short_pron.end(),
                         long_pron.begin())) {
            pairs.push_back({wl, ws, pl, ps});
          }
        }
      }
    }
  }
  if (static_cast<int64_t>(pairs.size()) > count) pairs.resize(count);
  if (found_fewer != nullptr && static_cast<int64_t>(pairs.size()) < count) {
    *found_fewer = true;
  }
  return pairs;
}

GeneratedCorpus generate(const CorpusSpec &spec) {
  spec.validate();
  GeneratedCorpus gc;
  gc.spec = spec;

  for (int i = 0; i < spec.phoneme_count; i++) {
    gc.lexicon.phonemes().add(phoneme_name(i));
  }

  // Word plan: plain words (carriers first), then prefix pairs, then
  // homophones; a fraction of plain non-carrier words get a second pron.
  Rng lex_rng(Rng::derive(spec.seed, 1));
  PronFactory prons{&lex_rng, spec.phoneme_count, {}};
  const int64_t num_pairs =
      static_cast<int64_t>(spec.vocab_size * spec.prefix_pair_fraction / 2);
  const int64_t num_homo =
      static_cast<int64_t>(spec.vocab_size * spec.homophone_fraction);
  const int64_t num_plain = spec.vocab_size - 2 * num_pairs - num_homo;

  std::vector<std::vector<std::vector<int>>> word_prons;
  word_prons.reserve(spec.vocab_size);
  for (int64_t i = 0; i < num_plain; i++) {
    word_prons.push_back({prons.fresh(spec.pron_len)});
  }
  std::vector<std::pair<int64_t, int64_t>> planned_pairs;  // (short, long) ids
  for (int64_t i = 0; i < num_pairs; i++) {
    IntRange short_len{spec.pron_len.lo,
                       std::max<int64_t>(spec.pron_len.lo, spec.pron_len.hi - 1)};
    std::vector<int> short_pron = prons.fresh(short_len);
    int max_extra = static_cast<int>(
        std::max<int64_t>(1, spec.pron_len.hi - static_cast<int64_t>(short_pron.size())));
    std::vector<int> long_pron = prons.fresh_extension(short_pron, max_extra);
    int64_t short_id = static_cast<int64_t>(word_prons.size());
    word_prons.push_back({short_pron});
    word_prons.push_back({long_pron});
    planned_pairs.emplace_back(short_id, short_id + 1);
  }
  for (int64_t i = 0; i < num_homo; i++) {
    // Reuse the first pron of an earlier word: a homophone.
    int64_t src = lex_rng.uniform_int(0, static_cast<int64_t>(word_prons.size()) - 1);
    word_prons.push_back({word_prons[src][0]});
  }
  // Second prons for a fraction of plain non-carrier words.
  int64_t num_multi = static_cast<int64_t>(spec.vocab_size * spec.multi_pron_fraction);
  std::vector<int64_t> multi_candidates;
  for (int64_t w = spec.carrier_count; w < num_plain; w++) {
    multi_candidates.push_back(w);
  }
  for (int64_t i = multi_candidates.size() - 1; i > 0; i--) {
    int64_t j = lex_rng.uniform_int(0, i);
    std::swap(multi_candidates[i], multi_candidates[j]);
  }
  num_multi = std::min<int64_t>(num_multi, multi_candidates.size());
  for (int64_t i = 0; i < num_multi; i++) {
    int64_t w = multi_candidates[i];
    word_prons[w].push_back(prons.fresh_variant(word_prons[w][0]));
  }

  std::unordered_set<std::string> taken_orths;
  for (const auto &wp : word_prons) {
    std::string orth = orth_from_pron(wp[0], /*capitalize=*/false, &taken_orths);
    for (const auto &p : wp) gc.lexicon.add(orth, p);
  }
  gc.lexicon.validate();
  for (int c = 0; c < spec.carrier_count; c++) gc.carrier_words.push_back(c);

  // Contact pool: prons disjoint from every static pron by construction
  // (the factory's used-set spans both).
  for (int64_t i = 0; i < spec.contact_pool_size; i++) {
    Contact c;
    c.pron = prons.fresh(spec.pron_len);
    c.orth = orth_from_pron(c.pron, /*capitalize=*/true, &taken_orths);
    gc.contact_pool.push_back(std::move(c));
  }

  const std::vector<Vec> protos = phoneme_prototypes(spec);

  // Frame synthesis shared by all splits.
  auto synth_utterance = [&](const std::string &id,
                             const std::vector<SpokenToken> &tokens,
                             std::vector<Contact> contacts, Rng *rng) {
    Utterance u;
    u.id = id;
    u.feature_dim = spec.feature_dim;
    u.contacts = std::move(contacts);
    for (const SpokenToken &tok : tokens) {
      int64_t begin = u.num_frames;
      for (int ph : tok.phonemes) {
        int64_t dur = rng->uniform_int(spec.frames_per_phoneme.lo,
                                       spec.frames_per_phoneme.hi);
        for (int64_t d = 0; d < dur; d++) {
          for (int f = 0; f < spec.feature_dim; f++) {
            double noise =
                spec.noise_sigma > 0 ? rng->normal() * spec.noise_sigma : 0.0;
            u.frames.push_back(protos[ph][f] + noise);
          }
          u.num_frames++;
        }
      }
      u.ref_words.push_back(tok.ref_word);
      u.ref_prons.push_back(tok.ref_pron);
      u.is_contact_mask.push_back(tok.is_contact);
      u.word_spans.emplace_back(begin, u.num_frames);
    }
    return u;
  };

  TokenQueue queue;
  for (int64_t w = 0; w < gc.lexicon.num_words(); w++) {
    for (int p : gc.lexicon.prons_of_word(w)) queue.all.emplace_back(w, p);
  }
  queue.idx = queue.all.size();  // shuffle before the first draw
  Rng train_rng(Rng::derive(spec.seed, 3));
  queue.rng = &train_rng;

  auto static_token = [&](std::pair<int64_t, int> wp) {
    return SpokenToken{wp.first, wp.second, gc.lexicon.pron(wp.second), false};
  };

  char idbuf[32];
  for (int64_t i = 0; i < spec.utterance_count; i++) {
    int64_t len = train_rng.uniform_int(spec.sentence_len.lo, spec.sentence_len.hi);
    std::vector<SpokenToken> tokens;
    for (int64_t t = 0; t < len; t++) tokens.push_back(static_token(queue.next()));
    std::snprintf(idbuf, sizeof(idbuf), "train-%05lld", static_cast<long long>(i));
    gc.train.push_back(synth_utterance(idbuf, tokens, {}, &train_rng));
  }

  // Test set: a stratified fraction of utterances speak one contact inside a
  // carrier pattern; every test utterance still carries a contact list.
  Rng test_rng(Rng::derive(spec.seed, 4));
  TokenQueue test_queue = queue;
  test_queue.rng = &test_rng;
  const bool contacts_possible =
      spec.contact_pool_size > 0 && spec.contacts_per_utterance.hi > 0;
  const int64_t n_words = gc.lexicon.num_words();
  const int64_t n_prons = gc.lexicon.num_prons();
  for (int64_t i = 0; i < spec.test_utterance_count; i++) {
    bool speak_contact =
        contacts_possible &&
        static_cast<int64_t>((i + 1) * spec.contact_utterance_fraction) >
            static_cast<int64_t>(i * spec.contact_utterance_fraction);
    std::vector<Contact> contacts;
    std::vector<SpokenToken> tokens;
    int64_t spoken_contact_idx = -1;
    if (contacts_possible) {
      int64_t list_size = test_rng.uniform_int(
          std::max<int64_t>(speak_contact ? 1 : 0, spec.contacts_per_utterance.lo),
          std::max<int64_t>(speak_contact ? 1 : 0, spec.contacts_per_utterance.hi));
      list_size = std::min<int64_t>(list_size, spec.contact_pool_size);
      std::vector<int64_t> pool_ids(spec.contact_pool_size);
      for (int64_t p = 0; p < spec.contact_pool_size; p++) pool_ids[p] = p;
      for (int64_t p = 0; p < list_size; p++) {
        int64_t j = test_rng.uniform_int(p, spec.contact_pool_size - 1);
        std::swap(pool_ids[p], pool_ids[j]);
      }
      for (int64_t p = 0; p < list_size; p++) {
        contacts.push_back(gc.contact_pool[pool_ids[p]]);
      }
      if (speak_contact && list_size > 0) {
        spoken_contact_idx = test_rng.uniform_int(0, list_size - 1);
      }
    }
    if (spoken_contact_idx >= 0) {
      int64_t lead = test_rng.uniform_int(0, 1);
      for (int64_t t = 0; t < lead; t++) {
        tokens.push_back(static_token(test_queue.next()));
      }
      int64_t carrier = gc.carrier_words[test_rng.uniform_int(
          0, static_cast<int64_t>(gc.carrier_words.size()) - 1)];
      int carrier_pron = gc.lexicon.prons_of_word(carrier).front();
      tokens.push_back({carrier, static_cast<int64_t>(carrier_pron),
                        gc.lexicon.pron(carrier_pron), false});
      tokens.push_back({n_words + spoken_contact_idx, n_prons + spoken_contact_idx,
                        contacts[spoken_contact_idx].pron, true});
      int64_t tail = test_rng.uniform_int(0, 1);
      for (int64_t t = 0; t < tail; t++) {
        tokens.push_back(static_token(test_queue.next()));
      }
    } else {
      int64_t len = test_rng.uniform_int(spec.sentence_len.lo, spec.sentence_len.hi);
      for (int64_t t = 0; t < len; t++) {
        tokens.push_back(static_token(test_queue.next()));
      }
    }
    std::snprintf(idbuf, sizeof(idbuf), "test-%05lld", static_cast<long long>(i));
    gc.test.push_back(synth_utterance(idbuf, tokens, std::move(contacts), &test_rng));
  }

  // Prefix-ambiguity set: each utterance speaks the long word of some pair.
  if (spec.overlap_utterance_count > 0) {
    std::vector<AmbiguousPair> pairs =
        make_ambiguous_pairs(gc.lexicon, spec.vocab_size);
    if (!pairs.empty()) {
      Rng ovl_rng(Rng::derive(spec.seed, 5));
      TokenQueue ovl_queue = queue;
      ovl_queue.rng = &ovl_rng;
      for (int64_t i = 0; i < spec.overlap_utterance_count; i++) {
        const AmbiguousPair &pair =
            pairs[ovl_rng.uniform_int(0, static_cast<int64_t>(pairs.size()) - 1)];
        std::vector<SpokenToken> tokens;
        int64_t lead = ovl_rng.uniform_int(0, 1);
        for (int64_t t = 0; t < lead; t++) {
          tokens.push_back(static_token(ovl_queue.next()));
        }
        size_t long_pos = tokens.size();
        tokens.push_back({pair.long_word, static_cast<int64_t>(pair.long_pron),
                          gc.lexicon.pron(pair.long_pron), false});
        int64_t tail = ovl_rng.uniform_int(0, 1);
        for (int64_t t = 0; t < tail; t++) {
          tokens.push_back(static_token(ovl_queue.next()));
        }
        std::snprintf(idbuf, sizeof(idbuf), "ovl-%04lld", static_cast<long long>(i));
        Utterance u = synth_utterance(idbuf, tokens, {}, &ovl_rng);
        OverlapCase oc;
        oc.utt_id = u.id;
        oc.long_word = pair.long_word;
        oc.short_word = pair.short_word;
        oc.span_begin = u.word_spans[long_pos].first;
        oc.span_end = u.word_spans[long_pos].second;
        gc.overlap_cases.push_back(oc);
        gc.overlap.push_back(std::move(u));
      }
    }
  }

  // Class bigram LM: uniform unigrams, a strong carrier -> $CONTACT bigram.
  // This is the exact generation model, written out rather than estimated.
  gc.lm.set_order(2);
  const double uni = 1.0 / static_cast<double>(n_words + 3);
  const double log10_uni = std::log10(uni);
  gc.lm.add_ngram({NGramLM::kBosSymbol}, -99.0);
  for (int64_t w = 0; w < n_words; w++) {
    bool carrier = w < spec.carrier_count;
    // Carrier contexts keep 0.8 for $CONTACT; the rest backs off.
    double backoff = carrier ? std::log10(0.2 / (1.0 - uni)) : 0.0;
    gc.lm.add_ngram({gc.lexicon.orth(w)}, log10_uni, backoff);
  }
  gc.lm.add_ngram({NGramLM::kClassSymbol}, log10_uni);
  gc.lm.add_ngram({"</s>"}, log10_uni);
  gc.lm.add_ngram({NGramLM::kUnkSymbol}, log10_uni);
  for (int64_t c = 0; c < spec.carrier_count; c++) {
    gc.lm.add_ngram({gc.lexicon.orth(c), NGramLM::kClassSymbol},
                    std::log10(0.8));
  }
  gc.lm.validate();
  return gc;
}

// ---------------------------------------------------------------------------
// Serialization.

namespace {

using nlohmann::json;

std::string pron_symbols(const std::vector<int> &pron, const PronLexicon &lex) {
  std::string s;
  for (size_t i = 0; i < pron.size(); i++) {
    if (i > 0) s += ' ';
    s += lex.phonemes().symbol(pron[i]);
  }
  return s;
}

std::vector<int> pron_from_symbols(const std::string &s, const PronLexicon &lex) {
  std::istringstream in(s);
  std::vector<int> pron;
  std::string sym;
  while (in >> sym) pron.push_back(lex.phonemes().id_of(sym));
  return pron;
}

}  // namespace

void write_corpus_jsonl(const std::string &path,
                        const std::vector<Utterance> &utts,
                        const PronLexicon &lex) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file: " + path);
  for (const Utterance &u : utts) {
    json j;
    j["id"] = u.id;
    json frames = json::array();
    for (int64_t t = 0; t < u.num_frames; t++) {
      json row = json::array();
      for (int f = 0; f < u.feature_dim; f++) {
        row.push_back(u.frames[t * u.feature_dim + f]);
      }
      frames.push_back(std::move(row));
    }
    j["frames"] = std::move(frames);
    j["ref_words"] = u.ref_words;
    j["ref_prons"] = u.ref_prons;
    json contacts = json::array();
    for (const Contact &c : u.contacts) {
      contacts.push_back(json::array({c.orth, pron_symbols(c.pron, lex)}));
    }
    j["contacts"] = std::move(contacts);
    j["is_contact_mask"] = u.is_contact_mask;
    out << j.dump() << "\n";
  }
  if (!out) throw DataError("write failed: " + path);
}

std::vector<Utterance> read_corpus_jsonl(const std::string &path,
                                         const PronLexicon &lex) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file: " + path);
  std::vector<Utterance> utts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error &e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    Utterance u;
    u.id = j.at("id").get<std::string>();
    const json &frames = j.at("frames");
    u.num_frames = static_cast<int64_t>(frames.size());
    u.feature_dim = u.num_frames > 0 ? static_cast<int>(frames[0].size()) : 0;
    u.frames.reserve(u.num_frames * u.feature_dim);
    for (const json &row : frames) {
      if (static_cast<int>(row.size()) != u.feature_dim) {
        throw DataError(path + ":" + std::to_string(lineno) +
                        ": ragged frame matrix");
      }
      for (const json &v : row) u.frames.push_back(v.get<double>());
    }
    u.ref_words = j.at("ref_words").get<std::vector<int64_t>>();
    u.ref_prons = j.at("ref_prons").get<std::vector<int64_t>>();
    for (const json &c : j.at("contacts")) {
      Contact contact;
      contact.orth = c.at(0).get<std::string>();
      contact.pron = pron_from_symbols(c.at(1).get<std::string>(), lex);
      u.contacts.push_back(std::move(contact));
    }
    u.is_contact_mask = j.at("is_contact_mask").get<std::vector<bool>>();
    if (u.ref_words.size() != u.ref_prons.size() ||
        u.ref_words.size() != u.is_contact_mask.size()) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": ref_words, ref_prons and is_contact_mask lengths differ");
    }
    check_finite(u.frames, "corpus frames");
    utts.push_back(std::move(u));
  }
  return utts;
}

void write_contacts_tsv(const std::string &path,
                        const std::vector<Contact> &pool,
                        const PronLexicon &lex) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write contacts file: " + path);
  for (const Contact &c : pool) {
    out << c.orth << '\t' << pron_symbols(c.pron, lex) << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

std::vector<Contact> read_contacts_tsv(const std::string &path,
                                       const PronLexicon &lex) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open contacts file: " + path);
  std::vector<Contact> pool;
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
    Contact c;
    c.orth = line.substr(0, tab);
    c.pron = pron_from_symbols(line.substr(tab + 1), lex);
    if (c.pron.empty()) {
      throw DataError(path + ":" + std::to_string(lineno) + ": empty pron");
    }
    pool.push_back(std::move(c));
  }
  return pool;
}

void write_overlap_tsv(const std::string &path,
                       const std::vector<OverlapCase> &cases) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write overlap file: " + path);
  for (const OverlapCase &c : cases) {
    out << c.utt_id << '\t' << c.long_word << '\t' << c.short_word << '\t'
        << c.span_begin << '\t' << c.span_end << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

std::vector<OverlapCase> read_overlap_tsv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open overlap file: " + path);
  std::vector<OverlapCase> cases;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    OverlapCase c;
    char id[256];
    long long lw, sw, b, e;
    if (std::sscanf(line.c_str(), "%255[^\t]\t%lld\t%lld\t%lld\t%lld", id, &lw,
                    &sw, &b, &e) != 5) {
      throw DataError(path + ":" + std::to_string(lineno) + ": bad record");
    }
    c.utt_id = id;
    c.long_word = lw;
    c.short_word = sw;
    c.span_begin = b;
    c.span_end = e;
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace a2w
