// util/common.h

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

#ifndef A2W_UTIL_COMMON_H_
#define A2W_UTIL_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace a2w {

using Vec = std::vector<double>;

// Error taxonomy. The CLI maps kinds to process exit codes:
//   kUsage -> 1, {kConfig, kInput, kData, kInfeasible} -> 2, kInternal -> 3.
enum class ErrorKind {
  kUsage,
  kConfig,      // inconsistent configuration (dimension mismatch, bad spec)
  kInput,       // malformed values (non-finite input, unknown id)
  kData,        // corpus/model/file contents inconsistent
  kInfeasible,  // label sequence cannot be aligned to the frame count
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string &msg) : Error(ErrorKind::kUsage, msg) {}
};
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &msg)
      : Error(ErrorKind::kConfig, msg) {}
};
class InputError : public Error {
 public:
  explicit InputError(const std::string &msg) : Error(ErrorKind::kInput, msg) {}
};
class DataError : public Error {
 public:
  explicit DataError(const std::string &msg) : Error(ErrorKind::kData, msg) {}
};
class InfeasibleAlignmentError : public Error {
 public:
  explicit InfeasibleAlignmentError(const std::string &msg)
      : Error(ErrorKind::kInfeasible, msg) {}
};
class InternalError : public Error {
 public:
  explicit InternalError(const std::string &msg)
      : Error(ErrorKind::kInternal, msg) {}
};

int exit_code_for(ErrorKind kind);

}  // namespace a2w

#endif  // A2W_UTIL_COMMON_H_
