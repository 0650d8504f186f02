// cli/pipeline.cc

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

#include "cli/pipeline.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <unordered_map>

#include "cli/run-manifest.h"
#include "json.hpp"
#include "pronlex/text-encoder.h"

namespace a2w {

namespace fs = std::filesystem;

CorpusDir load_corpus_dir(const std::string &root) {
  CorpusDir dir;
  dir.root = root;
  fs::path lex_path = fs::path(root) / "lexicon.tsv";
  if (!fs::exists(lex_path)) {
    throw DataError("corpus directory has no lexicon.tsv: " + root);
  }
  dir.lexicon = read_lexicon_tsv(lex_path.string());
  fs::path contacts_path = fs::path(root) / "contacts.tsv";
  if (fs::exists(contacts_path)) {
    dir.contact_pool = read_contacts_tsv(contacts_path.string(), dir.lexicon);
  }
  return dir;
}

std::vector<Utterance> load_split(const CorpusDir &dir,
                                  const std::string &split) {
  if (split != "train" && split != "test" && split != "overlap") {
    throw UsageError("unknown split '" + split + "'");
  }
  fs::path path = fs::path(dir.root) / (split + ".jsonl");
  if (!fs::exists(path)) {
    throw DataError("corpus split file missing: " + path.string());
  }
  return read_corpus_jsonl(path.string(), dir.lexicon);
}

std::string ref_orth(const Utterance &utt, const PronLexicon &lex,
                     int64_t word_id) {
  if (word_id < lex.num_words()) return lex.orth(word_id);
  int64_t idx = word_id - lex.num_words();
  if (idx >= static_cast<int64_t>(utt.contacts.size())) {
    throw DataError("utterance '" + utt.id + "': reference word id " +
                    std::to_string(word_id) + " beyond its contact list");
  }
  return utt.contacts[idx].orth;
}

std::vector<std::string> ref_orths(const Utterance &utt,
                                   const PronLexicon &lex) {
  std::vector<std::string> out;
  out.reserve(utt.ref_words.size());
  for (int64_t w : utt.ref_words) out.push_back(ref_orth(utt, lex, w));
  return out;
}

UtteranceDecoder::UtteranceDecoder(const ToyModel &model,
                                   const CheckpointMeta &meta,
                                   const PronLexicon &lex, const NGramLM *lm,
                                   const DecoderConfig &cfg)
    : model_(model),
      meta_(meta),
      lex_(lex),
      lm_(lm),
      cfg_(cfg),
      encoder_(lex.phonemes().size(), meta.encoder),
      static_g_(build_g_matrix(lex, meta.g_mode, meta.encoder)) {
  if (model.config().dim != meta.encoder.dim) {
    throw ConfigError("model dim " + std::to_string(model.config().dim) +
                      " does not match encoder dim " +
                      std::to_string(meta.encoder.dim));
  }
  cfg.validate();
}

VocabMatrix UtteranceDecoder::extended_matrix(const Utterance &utt) const {
  if (utt.contacts.empty()) return static_g_;
  std::vector<std::pair<int64_t, Vec>> entries;
  entries.reserve(utt.contacts.size());
  for (size_t j = 0; j < utt.contacts.size(); j++) {
    if (utt.contacts[j].pron.empty()) {
      throw InputError("utterance '" + utt.id + "': contact '" +
                       utt.contacts[j].orth + "' has no pron to embed");
    }
    entries.emplace_back(static_g_.static_count() + static_cast<int64_t>(j),
                         encoder_.encode(utt.contacts[j].pron));
  }
  return static_g_.with_dynamic(entries);
}

std::vector<Vec> UtteranceDecoder::column_log_posteriors(
    const Utterance &utt) const {
  VocabMatrix g = extended_matrix(utt);
  return log_posterior_grid(model_, g, meta_.combine, utt.frames.data(),
                            utt.num_frames);
}

std::vector<Vec> UtteranceDecoder::word_posteriors(const Utterance &utt) const {
  VocabMatrix g = extended_matrix(utt);
  std::vector<Vec> rows = posterior_grid(model_, g, meta_.combine,
                                         utt.frames.data(), utt.num_frames);
  if (meta_.g_mode == GMode::kOrth) return rows;
  const int64_t dyn = g.dynamic_count();
  for (Vec &row : rows) row = collapse_to_words(row, lex_, dyn);
  return rows;
}

std::vector<std::string> UtteranceDecoder::column_names(
    const Utterance &utt) const {
  std::vector<std::string> names = g_column_names(lex_, meta_.g_mode);
  for (const Contact &c : utt.contacts) names.push_back(c.orth);
  return names;
}

UtteranceDecoder::Output UtteranceDecoder::run(const Utterance &utt) const {
  std::vector<Vec> rows = word_posteriors(utt);
  DecodeVocab vocab;
  vocab.static_count = lex_.num_words();
  vocab.contacts_count = static_cast<int64_t>(utt.contacts.size());
  vocab.orths.reserve(lex_.num_words() + utt.contacts.size());
  for (int64_t w = 0; w < lex_.num_words(); w++) {
    vocab.orths.push_back(lex_.orth(w));
  }
  for (const Contact &c : utt.contacts) vocab.orths.push_back(c.orth);
  DecodeResult res = decode(rows, vocab, lm_, cfg_);
  Output out;
  out.word_ids = res.words;
  out.score = res.score;
  for (int64_t w : res.words) {
    out.orths.push_back(vocab.orths[w]);
    out.is_contact.push_back(vocab.is_dynamic(w));
  }
  return out;
}

std::vector<HypLine> decode_utterances(const UtteranceDecoder &dec,
                                       std::span<const Utterance> utts) {
  std::vector<HypLine> lines(utts.size());
  bool internal_failed = false;
  std::string internal_msg;
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < static_cast<int64_t>(utts.size()); i++) {
    lines[i].id = utts[i].id;
    try {
      UtteranceDecoder::Output out = dec.run(utts[i]);
      lines[i].words = std::move(out.orths);
      lines[i].is_contact = std::move(out.is_contact);
      lines[i].score = out.score;
    } catch (const Error &e) {
      // Per-utterance failure (e.g. a contact that cannot be embedded):
      // record and continue with the rest of the batch.
      lines[i].error = e.what();
    } catch (const std::exception &e) {
#pragma omp critical
      {
        internal_failed = true;
        internal_msg = e.what();
      }
    }
  }
  if (internal_failed) throw InternalError("decode failed: " + internal_msg);
  return lines;
}

void write_hyps_jsonl(const std::string &path,
                      const std::vector<HypLine> &lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write hyp file: " + path);
  for (const HypLine &line : lines) {
    nlohmann::json j;
    j["id"] = line.id;
    if (!line.error.empty()) {
      j["error"] = line.error;
    } else {
      j["hyp_words"] = line.words;
      j["hyp_is_contact"] = line.is_contact;
      j["score"] = line.score;
    }
    out << j.dump() << "\n";
  }
  if (!out) throw DataError("write failed: " + path);
}

std::vector<HypLine> read_hyps_jsonl(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open hyp file: " + path);
  std::vector<HypLine> lines;
  std::string text;
  int lineno = 0;
  while (std::getline(in, text)) {
    lineno++;
    if (text.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    HypLine line;
    line.id = j.at("id").get<std::string>();
    if (j.contains("error")) {
      line.error = j["error"].get<std::string>();
    } else {
      line.words = j.at("hyp_words").get<std::vector<std::string>>();
      line.is_contact = j.at("hyp_is_contact").get<std::vector<bool>>();
      line.score = j.at("score").get<double>();
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

EvalReport evaluate(std::span<const Utterance> refs,
                    const std::vector<HypLine> &hyps, const PronLexicon &lex) {
  std::unordered_map<std::string, const HypLine *> by_id;
  for (const HypLine &h : hyps) by_id[h.id] = &h;
  EvalCounts counts;
  const std::vector<std::string> empty;
  for (const Utterance &u : refs) {
    std::vector<std::string> ref = ref_orths(u, lex);
    auto it = by_id.find(u.id);
    const std::vector<std::string> &hyp =
        (it != by_id.end() && it->second->error.empty()) ? it->second->words
                                                         : empty;
    Alignment a = align(ref, hyp);
    std::vector<bool> mask(u.is_contact_mask.begin(), u.is_contact_mask.end());
    accumulate(&counts, a, mask);
  }
  return make_report(counts);
}

int overlap_pair_hits(const UtteranceDecoder &dec, const Utterance &utt,
                      const OverlapCase &oc, double threshold) {
  std::vector<Vec> rows = dec.word_posteriors(utt);
  const int s = dec.model().config().subsample;
  int64_t t_begin = oc.span_begin / s;
  int64_t t_end = std::max<int64_t>(t_begin + 1, (oc.span_end + s - 1) / s);
  t_end = std::min<int64_t>(t_end, static_cast<int64_t>(rows.size()));
  double best_long = 0.0, best_short = 0.0;
  for (int64_t t = t_begin; t < t_end; t++) {
    best_long = std::max(best_long, rows[t][1 + oc.long_word]);
    best_short = std::max(best_short, rows[t][1 + oc.short_word]);
  }
  return (best_long >= threshold ? 1 : 0) + (best_short >= threshold ? 1 : 0);
}

TrainedSystem train_system(const CorpusDir &dir,
                           const std::vector<Utterance> &train_utts,
                           GMode mode, CombineMode combine,
                           const ModelConfig &mcfg,
                           const TextEncoderConfig &enc_cfg) {
  TrainedSystem sys{ToyModel::init(mcfg), {}, {}, {}};
  sys.meta.g_mode = mode;
  sys.meta.combine = combine;
  sys.meta.encoder = enc_cfg;
  sys.g = build_g_matrix(dir.lexicon, mode, enc_cfg);
  std::vector<TrainItem> items;
  items.reserve(train_utts.size());
  for (const Utterance &u : train_utts) {
    TrainItem item;
    item.id = u.id;
    item.frames = u.frames.data();
    item.num_frames = u.num_frames;
    const std::vector<int64_t> &refs =
        mode == GMode::kPron ? u.ref_prons : u.ref_words;
    for (int64_t r : refs) item.ref.push_back(static_cast<int>(r) + 1);
    items.push_back(std::move(item));
  }
  sys.report = train_model(sys.model, sys.g, combine, items);
  return sys;
}

// ---------------------------------------------------------------------------
// Command runners.

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void finish_manifest(RunManifest *mf, const Stopwatch &watch,
                     const std::string &path) {
  mf->wall_clock_sec = watch.seconds();
  mf->started_at = utc_now();
  mf->write(path);
}

}  // namespace

int run_gen_corpus(const GenCorpusArgs &args) {
  Stopwatch watch;
  KvConfig kv = KvConfig::from_file(args.spec_path);
  CorpusSpec spec = CorpusSpec::from_config(kv);
  if (args.seed.has_value()) spec.seed = *args.seed;
  GeneratedCorpus gc = generate(spec);

  fs::create_directories(args.out_dir);
  fs::path root(args.out_dir);
  write_lexicon_tsv((root / "lexicon.tsv").string(), gc.lexicon);
  write_contacts_tsv((root / "contacts.tsv").string(), gc.contact_pool,
                     gc.lexicon);
  write_corpus_jsonl((root / "train.jsonl").string(), gc.train, gc.lexicon);
  write_corpus_jsonl((root / "test.jsonl").string(), gc.test, gc.lexicon);
  write_corpus_jsonl((root / "overlap.jsonl").string(), gc.overlap,
                     gc.lexicon);
  write_overlap_tsv((root / "overlap.tsv").string(), gc.overlap_cases);
  gc.lm.dump((root / "lm.arpa").string());

  RunManifest mf;
  mf.command = "gen-corpus";
  for (const auto &[k, v] : kv.entries()) mf.config[k] = v;
  mf.seed = spec.seed;
  mf.inputs = {args.spec_path};
  mf.outputs = {"lexicon.tsv", "contacts.tsv", "train.jsonl", "test.jsonl",
                "overlap.jsonl", "overlap.tsv", "lm.arpa"};
  finish_manifest(&mf, watch, (root / "manifest.json").string());

  int64_t test_tokens = 0, contact_tokens = 0;
  for (const Utterance &u : gc.test) {
    test_tokens += static_cast<int64_t>(u.ref_words.size());
    for (bool m : u.is_contact_mask) contact_tokens += m ? 1 : 0;
  }
  std::cout << "corpus: " << gc.lexicon.num_words() << " words, "
            << gc.lexicon.num_prons() << " prons, " << gc.train.size()
            << " train / " << gc.test.size() << " test / " << gc.overlap.size()
            << " overlap utterances\n";
  if (test_tokens > 0) {
    std::cout << "test contact tokens: " << contact_tokens << "/" << test_tokens
              << " (" << (100.0 * contact_tokens / test_tokens) << "%)\n";
  }
  return 0;
}

int run_train(const TrainArgs &args) {
  Stopwatch watch;
  CorpusDir dir = load_corpus_dir(args.corpus_dir);
  std::vector<Utterance> train_utts = load_split(dir, "train");
  if (train_utts.empty()) throw DataError("train: empty training corpus");

  GMode mode = g_mode_from_string(args.mode);
  CombineMode combine = combine_mode_from_string(args.combine);
  ModelConfig mcfg;
  mcfg.num_embeddings = args.k;
  mcfg.feature_dim = train_utts[0].feature_dim;
  if (args.dim) mcfg.dim = *args.dim;
  if (args.seed) mcfg.seed = *args.seed;
  if (args.epochs) mcfg.epochs = *args.epochs;
  if (args.learning_rate) mcfg.learning_rate = *args.learning_rate;
  if (args.hidden) mcfg.hidden = *args.hidden;
  if (args.context) mcfg.context = *args.context;
  if (args.subsample) mcfg.subsample = *args.subsample;
  if (args.batch_size) mcfg.batch_size = *args.batch_size;
  for (const Utterance &u : train_utts) {
    if (u.feature_dim != mcfg.feature_dim) {
      throw DataError("train: inconsistent feature_dim in corpus");
    }
  }
  TextEncoderConfig enc;
  enc.dim = mcfg.dim;
  if (args.enc_decay) enc.decay = *args.enc_decay;
  if (args.enc_seed) enc.seed = *args.enc_seed;

  TrainedSystem sys = train_system(dir, train_utts, mode, combine, mcfg, enc);

  RunManifest mf;
  mf.command = "train";
  mf.config["mode"] = to_string(mode);
  mf.config["combine"] = to_string(combine);
  mf.config["k"] = std::to_string(mcfg.num_embeddings);
  mf.config["dim"] = std::to_string(mcfg.dim);
  mf.config["hidden"] = std::to_string(mcfg.hidden);
  mf.config["context"] = std::to_string(mcfg.context);
  mf.config["subsample"] = std::to_string(mcfg.subsample);
  mf.config["epochs"] = std::to_string(mcfg.epochs);
  mf.config["batch_size"] = std::to_string(mcfg.batch_size);
  mf.config["learning_rate"] = std::to_string(mcfg.learning_rate);
  mf.config["enc_decay"] = std::to_string(enc.decay);
  mf.config["enc_seed"] = std::to_string(enc.seed);
  mf.seed = mcfg.seed;
  mf.inputs = {args.corpus_dir};
  mf.outputs = {args.out};
  sys.meta.manifest = mf.hash();

  save_checkpoint(args.out, sys.model, sys.meta);
  write_embedding_tsv(args.out + ".g.tsv", sys.g,
                      g_column_names(dir.lexicon, mode));
  {
    std::ofstream csv(args.out + ".loss.csv", std::ios::binary);
    if (!csv) throw DataError("cannot write loss csv");
    csv << "# manifest=" << mf.hash() << "\n";
    csv << "epoch,mean_loss\n";
    char buf[64];
    for (size_t e = 0; e < sys.report.epoch_mean_loss.size(); e++) {
      std::snprintf(buf, sizeof(buf), "%.17g", sys.report.epoch_mean_loss[e]);
      csv << (e + 1) << "," << buf << "\n";
    }
  }
  finish_manifest(&mf, watch, args.out + ".manifest.json");

  if (sys.report.g_checksum_before != sys.report.g_checksum_after) {
    throw InternalError("frozen G matrix changed during training");
  }
  std::cout << "parameters: " << sys.model.num_params() << "\n";
  std::cout << "g_checksum: " << hex64(sys.report.g_checksum_after) << "\n";
  if (!args.quiet) {
    for (size_t e = 0; e < sys.report.epoch_mean_loss.size(); e++) {
      std::cout << "epoch " << (e + 1) << " loss "
                << sys.report.epoch_mean_loss[e] << "\n";
    }
  } else if (!sys.report.epoch_mean_loss.empty()) {
    std::cout << "final loss: " << sys.report.epoch_mean_loss.back() << "\n";
  }
  return 0;
}

int run_decode(const DecodeArgs &args) {
  Stopwatch watch;
  CheckpointMeta meta;
  ToyModel model = load_checkpoint(args.model_path, &meta);
  CorpusDir dir = load_corpus_dir(args.corpus_dir);
  std::vector<Utterance> utts = load_split(dir, args.split);

  NGramLM lm;
  bool have_lm = !args.lm_path.empty();
  if (have_lm) lm = load_arpa(args.lm_path);

  DecoderConfig cfg;
  cfg.beam_width = args.beam_width;
  cfg.top_k_posteriors = args.top_k;
  cfg.lm_scale = args.lm_scale;
  cfg.blank_divisor = args.blank_divisor;

  UtteranceDecoder dec(model, meta, dir.lexicon, have_lm ? &lm : nullptr, cfg);
  std::vector<HypLine> lines = decode_utterances(dec, utts);
  write_hyps_jsonl(args.out, lines);

  RunManifest mf;
  mf.command = "decode";
  mf.config["split"] = args.split;
  mf.config["lm_scale"] = std::to_string(args.lm_scale);
  mf.config["blank_divisor"] = std::to_string(args.blank_divisor);
  mf.config["beam_width"] = std::to_string(args.beam_width);
  mf.config["top_k"] = std::to_string(args.top_k);
  mf.seed = 0;
  mf.inputs = {args.model_path, args.corpus_dir, args.lm_path};
  mf.outputs = {args.out};
  finish_manifest(&mf, watch, args.out + ".manifest.json");

  int64_t failed = 0;
  for (const HypLine &line : lines) failed += line.error.empty() ? 0 : 1;
  if (!args.quiet) {
    std::cout << "decoded " << lines.size() << " utterances";
    if (failed > 0) std::cout << " (" << failed << " failed)";
    std::cout << "\n";
  }
  return 0;
}

int run_eval(const EvalArgs &args) {
  CorpusDir dir = load_corpus_dir(args.corpus_dir);
  std::vector<Utterance> refs = load_split(dir, args.split);
  std::vector<HypLine> hyps = read_hyps_jsonl(args.hyp_path);
  EvalReport report = evaluate(refs, hyps, dir.lexicon);
  std::cout << report.to_table();
  if (!args.json_out.empty()) {
    std::ofstream out(args.json_out, std::ios::binary);
    if (!out) throw DataError("cannot write report: " + args.json_out);
    out << report.to_json() << "\n";
  }
  return 0;
}

int run_score_grid(const ScoreGridArgs &args) {
  CheckpointMeta meta;
  ToyModel model = load_checkpoint(args.model_path, &meta);
  CorpusDir dir = load_corpus_dir(args.corpus_dir);

  const Utterance *target = nullptr;
  std::vector<Utterance> holder;
  for (const char *split : {"test", "train", "overlap"}) {
    fs::path path = fs::path(dir.root) / (std::string(split) + ".jsonl");
    if (!fs::exists(path)) continue;
    std::vector<Utterance> utts = read_corpus_jsonl(path.string(), dir.lexicon);
    for (Utterance &u : utts) {
      if (u.id == args.utterance_id) {
        holder.push_back(std::move(u));
        target = &holder.back();
        break;
      }
    }
    if (target != nullptr) break;
  }
  if (target == nullptr) {
    throw DataError("utterance id not found: " + args.utterance_id);
  }

  DecoderConfig cfg;
  UtteranceDecoder dec(model, meta, dir.lexicon, nullptr, cfg);
  std::vector<Vec> rows = dec.column_log_posteriors(*target);
  std::vector<std::string> names = dec.column_names(*target);

  RunManifest mf;
  mf.command = "score-grid";
  mf.config["utterance"] = args.utterance_id;
  if (args.clip) mf.config["clip"] = std::to_string(*args.clip);
  mf.inputs = {args.model_path, args.corpus_dir};
  mf.outputs = {args.out};

  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw DataError("cannot write grid: " + args.out);
  out << "# manifest=" << mf.hash() << "\n";
  out << "frame,blank";
  for (const std::string &name : names) out << "," << name;
  out << "\n";
  char buf[64];
  for (size_t t = 0; t < rows.size(); t++) {
    out << t;
    for (double v : rows[t]) {
      if (args.clip && v < *args.clip) {
        out << ",";  // below the display floor: left blank
      } else {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << "," << buf;
      }
    }
    out << "\n";
  }
  if (!out) throw DataError("write failed: " + args.out);
  return 0;
}

}  // namespace a2w
