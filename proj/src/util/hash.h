// util/hash.h

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

#ifndef A2W_UTIL_HASH_H_
#define A2W_UTIL_HASH_H_

#include <cstdint>
#include <cstring>
#include <string>

namespace a2w {

// FNV-1a, 64-bit. Content fingerprinting only (frozen-matrix checksums,
// run-manifest ids), not cryptographic.
class Fnv1a {
 public:
  void update(const void *data, size_t n) {
    const unsigned char *p = static_cast<const unsigned char *>(data);
    for (size_t i = 0; i < n; i++) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void update(const std::string &s) { update(s.data(), s.size()); }
  template <typename T>
  void update_pod(const T &v) {
    update(&v, sizeof(T));
  }
  uint64_t digest() const { return h_; }

 private:
  uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string hex64(uint64_t v);

}  // namespace a2w

#endif  // A2W_UTIL_HASH_H_
