// cli/run-manifest.h

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

#ifndef A2W_CLI_RUN_MANIFEST_H_
#define A2W_CLI_RUN_MANIFEST_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace a2w {

inline constexpr const char *kToolVersion = "a2w 1.0.0";

// Record of one tool invocation. The id hashes the config snapshot, seeds,
// paths and tool version; wall-clock is recorded but deliberately left out
// of the hash so reruns with identical inputs carry identical ids.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
  double wall_clock_sec = 0.0;
  std::string started_at;  // UTC, seconds resolution

  std::string hash() const;
  void write(const std::string &path) const;
};

}  // namespace a2w

#endif  // A2W_CLI_RUN_MANIFEST_H_
