// embedcore/vocab-matrix.h

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

#ifndef A2W_EMBEDCORE_VOCAB_MATRIX_H_
#define A2W_EMBEDCORE_VOCAB_MATRIX_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "util/common.h"

namespace a2w {

// The pre-softmax matrix of word (or pron) embeddings. Columns are laid out
// contiguously; squared column norms are cached at insertion so the expanded
// similarity form never recomputes them. The first static_count columns are
// the training-time vocabulary; any columns after that are per-utterance
// dynamic entries (contact names). Immutable after construction: extending
// or clearing the dynamic region yields a new matrix, so a VocabMatrix can
// be shared across threads freely.
class VocabMatrix {
 public:
  VocabMatrix() = default;

  static VocabMatrix from_columns(
      int dim, const std::vector<std::pair<int64_t, Vec>> &columns);

  int dim() const { return dim_; }
  int64_t size() const { return static_cast<int64_t>(labels_.size()); }
  int64_t static_count() const { return static_count_; }
  int64_t dynamic_count() const { return size() - static_count_; }

  int64_t label(int64_t col) const { return labels_[col]; }
  const std::vector<int64_t> &labels() const { return labels_; }
  std::span<const double> column(int64_t col) const {
    return {data_.data() + col * dim_, static_cast<size_t>(dim_)};
  }
  const double *data() const { return data_.data(); }
  double sq_norm(int64_t col) const { return sq_norms_[col]; }
  const std::vector<double> &sq_norms() const { return sq_norms_; }

  // Returns a copy with the given columns appended as the dynamic region.
  // New labels must not collide with existing ones (static or dynamic).
  VocabMatrix with_dynamic(
      const std::vector<std::pair<int64_t, Vec>> &entries) const;

  // Returns a copy with the dynamic region removed. Round-tripping through
  // with_dynamic and without_dynamic is bit-exact.
  VocabMatrix without_dynamic() const;

  // Fingerprint over dim, labels, column data and cached norms.
  uint64_t checksum() const;

  bool bit_equal(const VocabMatrix &other) const;

 private:
  void append_column(int64_t label, std::span<const double> values);

  int dim_ = 0;
  int64_t static_count_ = 0;
  std::vector<int64_t> labels_;
  std::vector<double> data_;      // column-major, size() * dim_
  std::vector<double> sq_norms_;  // g_i^T g_i per column
};

// Embedding-matrix file: header "a2w-emb v1 dim=<D>", then one row per
// column: "<label>\t<float>..." with floats printed as %.17g.
void write_embedding_tsv(const std::string &path, const VocabMatrix &mat,
                         const std::vector<std::string> &label_names);
VocabMatrix read_embedding_tsv(const std::string &path,
                               std::vector<std::string> *label_names);

}  // namespace a2w

#endif  // A2W_EMBEDCORE_VOCAB_MATRIX_H_
