// tools/a2w-main.cc

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

#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "cli/pipeline.h"
#include "cli/run-manifest.h"
#include "util/common.h"

int main(int argc, char **argv) {
  CLI::App app{"Embedding-matching acoustic-to-word toolkit"};
  app.set_version_flag("--version", a2w::kToolVersion);
  app.require_subcommand(1);

  int jobs = 0;
  app.add_option("--jobs", jobs, "Worker threads (0 = hardware default)")
      ->capture_default_str();
  uint64_t global_seed = 0;
  bool have_seed = false;
  app.add_option_function<uint64_t>(
         "--seed",
         [&](uint64_t v) {
           global_seed = v;
           have_seed = true;
         },
         "Override the seed of the invoked command");

  a2w::GenCorpusArgs gen;
  CLI::App *cmd_gen = app.add_subcommand("gen-corpus",
                                         "Generate a synthetic corpus");
  cmd_gen->add_option("--spec", gen.spec_path, "Corpus spec (key=value file)")
      ->required();
  cmd_gen->add_option("--out", gen.out_dir, "Output directory")->required();

  a2w::TrainArgs train;
  CLI::App *cmd_train = app.add_subcommand("train", "Train an acoustic model");
  cmd_train->add_option("--corpus", train.corpus_dir, "Corpus directory")
      ->required();
  cmd_train->add_option("--mode", train.mode, "Vocabulary unit: orth|pron")
      ->check(CLI::IsMember({"orth", "pron"}))
      ->capture_default_str();
  cmd_train->add_option("--k", train.k, "Embeddings per frame (1..3)")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  cmd_train->add_option("--out", train.out, "Checkpoint path")->required();
  cmd_train->add_option("--combine", train.combine,
                        "Score combination: sum|log-sum-exp")
      ->check(CLI::IsMember({"sum", "log-sum-exp", "lse"}))
      ->capture_default_str();
  cmd_train->add_option("--epochs", train.epochs, "Training epochs");
  cmd_train->add_option("--learning-rate", train.learning_rate, "SGD step");
  cmd_train->add_option("--hidden", train.hidden, "Hidden width");
  cmd_train->add_option("--context", train.context, "Stacked frames per side");
  cmd_train->add_option("--subsample", train.subsample,
                        "Frame subsampling factor");
  cmd_train->add_option("--batch", train.batch_size, "Minibatch size");
  cmd_train->add_option("--dim", train.dim, "Embedding dimension");
  cmd_train->add_option("--enc-decay", train.enc_decay,
                        "Text encoder positional decay");
  cmd_train->add_option("--enc-seed", train.enc_seed, "Text encoder seed");
  cmd_train->add_flag("--quiet", train.quiet, "Only print the final loss");

  a2w::DecodeArgs dec;
  CLI::App *cmd_dec = app.add_subcommand("decode", "Decode a corpus split");
  cmd_dec->add_option("--model", dec.model_path, "Checkpoint path")->required();
  cmd_dec->add_option("--corpus", dec.corpus_dir, "Corpus directory")
      ->required();
  cmd_dec->add_option("--split", dec.split, "train|test|overlap")
      ->capture_default_str();
  cmd_dec->add_option("--lm", dec.lm_path, "ARPA language model");
  cmd_dec->add_option("--lm-scale", dec.lm_scale, "LM fusion weight")
      ->capture_default_str();
  cmd_dec->add_option("--blank-div", dec.blank_divisor,
                      "Blank posterior divisor (>= 1)")
      ->capture_default_str();
  cmd_dec->add_option("--beam", dec.beam_width, "Beam width")
      ->capture_default_str();
  cmd_dec->add_option("--top-k", dec.top_k, "Posterior entries kept per frame")
      ->capture_default_str();
  cmd_dec->add_option("--out", dec.out, "Hypotheses JSONL path")->required();
  cmd_dec->add_flag("--quiet", dec.quiet, "Suppress the summary line");

  a2w::EvalArgs ev;
  CLI::App *cmd_eval = app.add_subcommand("eval", "Score hypotheses");
  cmd_eval->add_option("--ref", ev.corpus_dir, "Corpus directory")->required();
  cmd_eval->add_option("--split", ev.split, "train|test|overlap")
      ->capture_default_str();
  cmd_eval->add_option("--hyp", ev.hyp_path, "Hypotheses JSONL")->required();
  cmd_eval->add_option("--json", ev.json_out, "Write the report as JSON");

  a2w::ScoreGridArgs grid;
  CLI::App *cmd_grid = app.add_subcommand(
      "score-grid", "Dump one utterance's log-posterior grid as CSV");
  cmd_grid->add_option("--model", grid.model_path, "Checkpoint path")
      ->required();
  cmd_grid->add_option("--corpus", grid.corpus_dir, "Corpus directory")
      ->required();
  cmd_grid->add_option("--utterance", grid.utterance_id, "Utterance id")
      ->required();
  cmd_grid->add_option("--out", grid.out, "CSV path")->required();
  double clip_value = 0.0;
  CLI::Option *clip_opt = cmd_grid->add_option(
      "--clip", clip_value, "Leave cells below this log value blank");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#endif

  try {
    if (cmd_gen->parsed()) {
      if (have_seed) gen.seed = global_seed;
      return a2w::run_gen_corpus(gen);
    }
    if (cmd_train->parsed()) {
      if (have_seed) train.seed = global_seed;
      return a2w::run_train(train);
    }
    if (cmd_dec->parsed()) return a2w::run_decode(dec);
    if (cmd_eval->parsed()) return a2w::run_eval(ev);
    if (cmd_grid->parsed()) {
      if (clip_opt->count() > 0) grid.clip = clip_value;
      return a2w::run_score_grid(grid);
    }
  } catch (const a2w::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return a2w::exit_code_for(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
