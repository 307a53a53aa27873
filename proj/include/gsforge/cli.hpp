// Copyright 2026 The gsforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace gsforge::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;    // bad flags, config or parameters
inline constexpr int kRejected = 2;   // verification failure or band violation

/// Flat settings: every key is also a command-line flag (--key). Values are
/// kept as text and parsed on use so that errors can name the key.
class Settings {
 public:
  /// Keys a config file or the command line may set.
  static const std::vector<std::string> &keys();

  void set(const std::string &key, const std::string &value);
  void add_axis(const std::string &axis) { axes_.push_back(axis); }

  /// Merges a JSON config file; existing values (from flags) win.
  void merge_config_file(const std::string &path);

  bool has(const std::string &key) const { return values_.count(key) != 0; }
  std::string str(const std::string &key, const std::string &fallback) const;
  std::string required(const std::string &key) const;
  std::size_t size(const std::string &key, std::size_t fallback) const;
  double real(const std::string &key) const;
  unsigned long long u64(const std::string &key, unsigned long long fallback) const;
  const std::vector<std::string> &axes() const { return axes_; }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> axes_;
};

/// Runs one command (`args` excludes the program name). Results go to `out`
/// or to --out; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace gsforge::cli
