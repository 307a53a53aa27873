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

#include <sstream>
#include <type_traits>

#include <nlohmann/json.hpp>

#include "gsforge/protocols.hpp"

namespace gsforge {

namespace {

const char *const kKinds[] = {"SQG", "CNOT", "CZ", "CR", "EMIT", "MEASURE", "COND", "VRZ"};

}  // namespace

std::size_t GateCounts::operator[](const std::string &kind) const {
  auto it = counts.find(kind);
  return it == counts.end() ? 0 : it->second;
}

GateCounts census(const CircuitIR &c, const std::optional<std::set<Stage>> &stages) {
  GateCounts g;
  for (const char *k : kKinds) g.counts[k] = 0;
  for (const auto &ins : c.instructions()) {
    if (stages && !stages->count(ins.stage)) continue;
    std::visit(
        [&](const auto &op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, SqGate>) ++g.counts["SQG"];
          else if constexpr (std::is_same_v<T, TwoQubitGate>) ++g.counts[to_string(op.kind)];
          else if constexpr (std::is_same_v<T, Emit>) ++g.counts["EMIT"];
          else if constexpr (std::is_same_v<T, Measure>) ++g.counts["MEASURE"];
          else if constexpr (std::is_same_v<T, Idle>) g.idle_windows += op.windows * double(op.qubits.size());
          else if constexpr (std::is_same_v<T, CondPauli>) ++g.counts["COND"];
          else if constexpr (std::is_same_v<T, VirtualRz>) ++g.counts["VRZ"];
        },
        ins.op);
  }
  return g;
}

std::string GateCounts::to_json() const {
  nlohmann::json j(counts);
  j["IDLE"] = idle_windows;
  return j.dump();
}

std::string GateCounts::to_text() const {
  std::ostringstream os;
  for (const char *k : kKinds) os << k << ' ' << (*this)[k] << '\n';
  os << "IDLE " << idle_windows << '\n';
  return os.str();
}

}  // namespace gsforge
