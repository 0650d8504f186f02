// embedcore/vocab-matrix.cc

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

#include "embedcore/vocab-matrix.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "embedcore/scoring.h"
#include "util/hash.h"

namespace a2w {

void VocabMatrix::append_column(int64_t label, std::span<const double> values) {
  if (static_cast<int>(values.size()) != dim_) {
    throw ConfigError("vocab matrix: column for label " + std::to_string(label) +
                      " has dim " + std::to_string(values.size()) +
                      ", expected " + std::to_string(dim_));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InputError("vocab matrix: non-finite entry in column for label " +
                       std::to_string(label));
    }
  }
  labels_.push_back(label);
  data_.insert(data_.end(), values.begin(), values.end());
  // Cached with the same dot() the scorer uses, so an exact embedding match
  // cancels to a score of exactly 0.
  sq_norms_.push_back(dot(values, values));
}

VocabMatrix VocabMatrix::from_columns(
    int dim, const std::vector<std::pair<int64_t, Vec>> &columns) {
  if (dim < 1) throw ConfigError("vocab matrix: dim must be >= 1");
  VocabMatrix m;
  m.dim_ = dim;
  m.labels_.reserve(columns.size());
  m.data_.reserve(columns.size() * dim);
  m.sq_norms_.reserve(columns.size());
  std::unordered_set<int64_t> seen;
  for (const auto &[label, values] : columns) {
    if (!seen.insert(label).second) {
      throw InputError("vocab matrix: duplicate label " + std::to_string(label));
    }
    m.append_column(label, values);
  }
  m.static_count_ = m.size();
  return m;
}

VocabMatrix VocabMatrix::with_dynamic(
    const std::vector<std::pair<int64_t, Vec>> &entries) const {
  VocabMatrix m = *this;
  std::unordered_set<int64_t> seen(labels_.begin(), labels_.end());
  for (const auto &[label, values] : entries) {
    if (!seen.insert(label).second) {
      throw InputError("vocab matrix: duplicate dynamic label " +
                       std::to_string(label));
    }
    m.append_column(label, values);
  }
  return m;
}

VocabMatrix VocabMatrix::without_dynamic() const {
  VocabMatrix m;
  m.dim_ = dim_;
  m.static_count_ = static_count_;
  m.labels_.assign(labels_.begin(), labels_.begin() + static_count_);
  m.data_.assign(data_.begin(), data_.begin() + static_count_ * dim_);
  m.sq_norms_.assign(sq_norms_.begin(), sq_norms_.begin() + static_count_);
  return m;
}

uint64_t VocabMatrix::checksum() const {
  Fnv1a h;
  h.update_pod(dim_);
  h.update_pod(static_count_);
  h.update(labels_.data(), labels_.size() * sizeof(int64_t));
  h.update(data_.data(), data_.size() * sizeof(double));
  h.update(sq_norms_.data(), sq_norms_.size() * sizeof(double));
  return h.digest();
}

bool VocabMatrix::bit_equal(const VocabMatrix &other) const {
  return dim_ == other.dim_ && static_count_ == other.static_count_ &&
         labels_ == other.labels_ &&
         data_.size() == other.data_.size() &&
         std::memcmp(data_.data(), other.data_.data(),
                     data_.size() * sizeof(double)) == 0 &&
         std::memcmp(sq_norms_.data(), other.sq_norms_.data(),
                     sq_norms_.size() * sizeof(double)) == 0;
}

void write_embedding_tsv(const std::string &path, const VocabMatrix &mat,
                         const std::vector<std::string> &label_names) {
  if (!label_names.empty() &&
      static_cast<int64_t>(label_names.size()) != mat.size()) {
    throw ConfigError("embedding tsv: " + std::to_string(label_names.size()) +
                      " names for " + std::to_string(mat.size()) + " columns");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write embedding file: " + path);
  out << "a2w-emb v1 dim=" << mat.dim() << "\n";
  char buf[64];
  for (int64_t i = 0; i < mat.size(); i++) {
    if (label_names.empty()) {
      out << mat.label(i);
    } else {
      out << label_names[i];
    }
    for (double v : mat.column(i)) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << '\t' << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

VocabMatrix read_embedding_tsv(const std::string &path,
                               std::vector<std::string> *label_names) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file: " + path);
  std::string header;
  if (!std::getline(in, header)) {
    throw DataError("embedding file is empty: " + path);
  }
  int dim = 0;
  if (std::sscanf(header.c_str(), "a2w-emb v1 dim=%d", &dim) != 1 || dim < 1) {
    throw DataError("bad embedding file header: '" + header + "'");
  }
  std::vector<std::pair<int64_t, Vec>> columns;
  std::vector<std::string> names;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string label;
    if (!std::getline(ls, label, '\t')) {
      throw DataError(path + ":" + std::to_string(lineno) + ": missing label");
    }
    Vec values;
    values.reserve(dim);
    std::string tok;
    while (std::getline(ls, tok, '\t')) {
      values.push_back(std::stod(tok));
    }
    if (static_cast<int>(values.size()) != dim) {
      throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(dim) + " values, got " +
                      std::to_string(values.size()));
    }
    columns.emplace_back(static_cast<int64_t>(columns.size()),
                         std::move(values));
    names.push_back(label);
  }
  if (label_names != nullptr) *label_names = std::move(names);
  return VocabMatrix::from_columns(dim, columns);
}

}  // namespace a2w
