// cli/pipeline.h

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

#ifndef A2W_CLI_PIPELINE_H_
#define A2W_CLI_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "decoder/prefix-decoder.h"
#include "evalkit/wer.h"
#include "synth/corpus.h"
#include "toymodel/model.h"
#include "toymodel/trainer.h"

namespace a2w {

// A corpus directory as written by gen-corpus: lexicon.tsv, contacts.tsv,
// {train,test,overlap}.jsonl, overlap.tsv, lm.arpa.
struct CorpusDir {
  std::string root;
  PronLexicon lexicon;
  std::vector<Contact> contact_pool;
};

CorpusDir load_corpus_dir(const std::string &root);
std::vector<Utterance> load_split(const CorpusDir &dir,
                                  const std::string &split);

// Maps a reference word id (static or dynamic) to its orthography.
std::string ref_orth(const Utterance &utt, const PronLexicon &lex,
                     int64_t word_id);
std::vector<std::string> ref_orths(const Utterance &utt,
                                   const PronLexicon &lex);

// Per-utterance decoding pipeline: extends the frozen matrix with the
// utterance's contact embeddings, runs the model, collapses pron posteriors
// to word scores when needed, and beam-searches the result.
class UtteranceDecoder {
 public:
  UtteranceDecoder(const ToyModel &model, const CheckpointMeta &meta,
                   const PronLexicon &lex, const NGramLM *lm,
                   const DecoderConfig &cfg);

  struct Output {
    std::vector<int64_t> word_ids;
    std::vector<std::string> orths;
    std::vector<bool> is_contact;
    double score = 0.0;
  };
  Output run(const Utterance &utt) const;

  // Log posteriors over {blank} + matrix columns (+ this utterance's
  // contacts): the raw softmax grid, rows sum to one in probability.
  std::vector<Vec> column_log_posteriors(const Utterance &utt) const;
  // Probability-domain posteriors over {blank} + words (+ contacts); in
  // pron mode this applies the max-collapse, so rows need not sum to one.
  std::vector<Vec> word_posteriors(const Utterance &utt) const;

  std::vector<std::string> column_names(const Utterance &utt) const;
  const VocabMatrix &static_matrix() const { return static_g_; }
  const CheckpointMeta &meta() const { return meta_; }
  const ToyModel &model() const { return model_; }

 private:
  VocabMatrix extended_matrix(const Utterance &utt) const;

  const ToyModel &model_;
  CheckpointMeta meta_;
  const PronLexicon &lex_;
  const NGramLM *lm_;
  DecoderConfig cfg_;
  TextEncoder encoder_;
  VocabMatrix static_g_;
};

// One hypothesis line of the decode output. A failed utterance keeps its id
// and carries the error text instead of words.
struct HypLine {
  std::string id;
  std::vector<std::string> words;
  std::vector<bool> is_contact;
  double score = 0.0;
  std::string error;
};

// Decodes a batch, utterances in parallel, output in input order.
std::vector<HypLine> decode_utterances(const UtteranceDecoder &dec,
                                       std::span<const Utterance> utts);

void write_hyps_jsonl(const std::string &path,
                      const std::vector<HypLine> &lines);
std::vector<HypLine> read_hyps_jsonl(const std::string &path);

// Scores hypotheses against references; hyps are matched to utterances by
// id and missing ids count as empty hypotheses.
EvalReport evaluate(std::span<const Utterance> refs,
                    const std::vector<HypLine> &hyps, const PronLexicon &lex);

// Fig.-4-style ambiguity probe: within the spoken span of the pair's long
// word, counts how many of {short word, long word} reach a word posterior
// of at least `threshold` on some frame. A multi-hypothesis model should
// reach 2 where a single-hypothesis model reaches 1.
int overlap_pair_hits(const UtteranceDecoder &dec, const Utterance &utt,
                      const OverlapCase &oc, double threshold);

// Everything run_train produces; used directly by the acceptance suite.
struct TrainedSystem {
  ToyModel model;
  CheckpointMeta meta;
  VocabMatrix g;
  TrainReport report;
};
TrainedSystem train_system(const CorpusDir &dir,
                           const std::vector<Utterance> &train_utts,
                           GMode mode, CombineMode combine,
                           const ModelConfig &mcfg,
                           const TextEncoderConfig &enc_cfg);

// ---------------------------------------------------------------------------
// CLI commands. Each returns a process exit code.

struct GenCorpusArgs {
  std::string spec_path;
  std::string out_dir;
  std::optional<uint64_t> seed;
};
int run_gen_corpus(const GenCorpusArgs &args);

struct TrainArgs {
  std::string corpus_dir;
  std::string mode = "pron";
  int k = 1;
  std::string out;
  std::string combine = "sum";
  std::optional<uint64_t> seed;
  std::optional<int> epochs;
  std::optional<double> learning_rate;
  std::optional<int> hidden;
  std::optional<int> context;
  std::optional<int> subsample;
  std::optional<int> batch_size;
  std::optional<int> dim;
  std::optional<double> enc_decay;
  std::optional<uint64_t> enc_seed;
  bool quiet = false;
};
int run_train(const TrainArgs &args);

struct DecodeArgs {
  std::string model_path;
  std::string corpus_dir;
  std::string split = "test";
  std::string lm_path;
  double lm_scale = 0.0;
  double blank_divisor = 1.0;
  int beam_width = 16;
  int top_k = 48;
  std::string out;
  bool quiet = false;
};
int run_decode(const DecodeArgs &args);

struct EvalArgs {
  std::string corpus_dir;
  std::string split = "test";
  std::string hyp_path;
  std::string json_out;
};
int run_eval(const EvalArgs &args);

struct ScoreGridArgs {
  std::string model_path;
  std::string corpus_dir;
  std::string utterance_id;
  std::string out;
  std::optional<double> clip;
};
int run_score_grid(const ScoreGridArgs &args);

}  // namespace a2w

#endif  // A2W_CLI_PIPELINE_H_
