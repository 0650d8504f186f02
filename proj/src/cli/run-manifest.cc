// cli/run-manifest.cc

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

#include "cli/run-manifest.h"

#include <fstream>

#include "json.hpp"
#include "util/common.h"
#include "util/hash.h"

namespace a2w {

std::string RunManifest::hash() const {
  Fnv1a h;
  h.update(command);
  for (const auto &[k, v] : config) {
    h.update(k);
    h.update("=");
    h.update(v);
    h.update(";");
  }
  h.update_pod(seed);
  for (const auto &p : inputs) {
    h.update(p);
    h.update(";");
  }
  for (const auto &p : outputs) {
    h.update(p);
    h.update(";");
  }
  h.update(tool_version);
  return hex64(h.digest());
}

void RunManifest::write(const std::string &path) const {
  nlohmann::json j;
  j["manifest"] = hash();
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["tool_version"] = tool_version;
  j["wall_clock_sec"] = wall_clock_sec;
  j["started_at"] = started_at;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write manifest: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace a2w
