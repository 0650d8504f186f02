// util/kv-config.h

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

#ifndef A2W_UTIL_KV_CONFIG_H_
#define A2W_UTIL_KV_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>

namespace a2w {

// Inclusive integer range, written "lo:hi" in config files ("3" means 3:3).
struct IntRange {
  int64_t lo = 0;
  int64_t hi = 0;
  bool contains(int64_t v) const { return v >= lo && v <= hi; }
  int64_t width() const { return hi - lo + 1; }
};

// Flat key=value config. Lines are "key = value"; '#' starts a comment.
class KvConfig {
 public:
  static KvConfig from_file(const std::string &path);
  static KvConfig from_string(const std::string &text);

  bool has(const std::string &key) const { return kv_.count(key) > 0; }

  std::string get_string(const std::string &key, const std::string &dflt) const;
  int64_t get_int(const std::string &key, int64_t dflt) const;
  uint64_t get_u64(const std::string &key, uint64_t dflt) const;
  double get_double(const std::string &key, double dflt) const;
  IntRange get_range(const std::string &key, IntRange dflt) const;

  const std::map<std::string, std::string> &entries() const { return kv_; }
  void set(const std::string &key, const std::string &value) { kv_[key] = value; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace a2w

#endif  // A2W_UTIL_KV_CONFIG_H_
