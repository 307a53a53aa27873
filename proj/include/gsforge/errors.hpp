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

#include <stdexcept>
#include <string>

namespace gsforge {

/// Bad input to an operation: sizes, ranges, parameter sets, malformed circuits.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string &what) : std::invalid_argument(what) {}
};

/// A protocol did something impossible, e.g. a forced outcome contradicts a
/// deterministic measurement.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace gsforge
