// util/kv-config.cc

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

#include "util/kv-config.h"

#include <fstream>
#include <sstream>

#include "util/common.h"

namespace a2w {

namespace {

std::string trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

KvConfig KvConfig::from_string(const std::string &text) {
  KvConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    cfg.kv_[key] = value;
  }
  return cfg;
}

KvConfig KvConfig::from_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

std::string KvConfig::get_string(const std::string &key,
                                 const std::string &dflt) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? dflt : it->second;
}

int64_t KvConfig::get_int(const std::string &key, int64_t dflt) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  try {
    size_t pos = 0;
    int64_t v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "': not an integer: '" +
                      it->second + "'");
  }
}

uint64_t KvConfig::get_u64(const std::string &key, uint64_t dflt) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  try {
    size_t pos = 0;
    uint64_t v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "': not an unsigned integer: '" +
                      it->second + "'");
  }
}

double KvConfig::get_double(const std::string &key, double dflt) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "': not a number: '" + it->second +
                      "'");
  }
}

IntRange KvConfig::get_range(const std::string &key, IntRange dflt) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  const std::string &v = it->second;
  size_t colon = v.find(':');
  try {
    IntRange r;
    if (colon == std::string::npos) {
      r.lo = r.hi = std::stoll(v);
    } else {
      r.lo = std::stoll(v.substr(0, colon));
      r.hi = std::stoll(v.substr(colon + 1));
    }
    if (r.hi < r.lo) {
      throw ConfigError("config key '" + key + "': empty range '" + v + "'");
    }
    return r;
  } catch (const Error &) {
    throw;
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "': not a range: '" + v + "'");
  }
}

}  // namespace a2w
