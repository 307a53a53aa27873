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

#include "gsforge/clifford.hpp"
#include "gsforge/protocols.hpp"

namespace gsforge {

ShorCheck check_shor_logical(const CircuitIR &c) {
  const ShorLayout l = shor_layout(c);
  const std::size_t n = c.qubit_count();
  const auto &p = l.photons;

  std::vector<std::pair<std::string, PauliString>> required;
  auto pauli_on = [&](const std::vector<QubitId> &qs, Pauli x) {
    PauliString s(n);
    for (auto q : qs) s.set(q, x);
    return s;
  };
  for (std::size_t b = 0; b < 9; b += 3) {
    required.push_back({"ZZ in block " + std::to_string(b / 3), pauli_on({p[b], p[b + 1]}, Pauli::Z)});
    required.push_back({"ZZ in block " + std::to_string(b / 3), pauli_on({p[b + 1], p[b + 2]}, Pauli::Z)});
  }
  for (std::size_t b = 0; b < 6; b += 3)
    required.push_back({"X sextet " + std::to_string(b / 3), pauli_on({p[b], p[b + 1], p[b + 2], p[b + 3], p[b + 4], p[b + 5]}, Pauli::X)});
  PauliString zx = pauli_on(p, Pauli::Z), xz = pauli_on(p, Pauli::X);
  zx.set(l.aux, Pauli::Z);
  xz.set(l.aux, Pauli::X);
  required.push_back({"Z_aux X_L", zx});
  required.push_back({"X_aux Z_L", xz});

  const BranchCheck bc = for_each_branch(c, [&](const RunResult &r) -> std::optional<std::string> {
    const StabilizerTableau t = r.corrected_state();
    for (const auto &[name, s] : required) {
      const auto m = t.membership(s);
      if (!m) return name + " is not a stabilizer";
      if (*m != 1) return name + " has eigenvalue -1";
    }
    return std::nullopt;
  });
  return {!bc.failure, bc.branches, bc.failure};
}

}  // namespace gsforge
