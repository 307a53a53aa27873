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

// Dense references for gate-only circuits, built from textbook matrices.
#pragma once

#include <set>
#include <variant>

#include "gsforge/ir.hpp"
#include "support/dense.hpp"

namespace testsupport {

inline Mat dense_prim(gsforge::Prim g) {
  using gsforge::Prim;
  switch (g) {
    case Prim::H: return hadamard();
    case Prim::X: return pauli('X');
    case Prim::Z: return pauli('Z');
    case Prim::RXP: return rotation('X', M_PI / 2);
    case Prim::RXM: return rotation('X', -M_PI / 2);
    case Prim::RZP: return rotation('Z', M_PI / 2);
    case Prim::RZM: return rotation('Z', -M_PI / 2);
  }
  return {};
}

inline Mat dense_two(gsforge::TwoQubitKind k) {
  using gsforge::TwoQubitKind;
  switch (k) {
    case TwoQubitKind::CNOT: return cnot();
    case TwoQubitKind::CZ: return cz();
    case TwoQubitKind::CR: return cross_resonance();
  }
  return {};
}

/// Unitary of a circuit that holds only single- and two-qubit gates.
inline Mat circuit_unitary(const gsforge::CircuitIR &c) {
  const int n = static_cast<int>(c.qubit_count());
  Mat u = Mat::Identity(1 << n, 1 << n);
  for (const auto &ins : c.instructions()) {
    if (const auto *g = std::get_if<gsforge::SqGate>(&ins.op)) {
      for (auto p : g->parts) u = embed(dense_prim(p), {int(g->qubit)}, n) * u;
    } else if (const auto *t = std::get_if<gsforge::TwoQubitGate>(&ins.op)) {
      u = embed(dense_two(t->kind), {int(t->control), int(t->target)}, n) * u;
    } else {
      throw std::invalid_argument("circuit_unitary: gate-only circuits");
    }
  }
  return u;
}

/// max |a - e^{i phi} b| with the phase fixed by the largest entry of b.
inline double distance_up_to_phase(const Mat &a, const Mat &b) {
  Eigen::Index r = 0, col = 0;
  b.cwiseAbs().maxCoeff(&r, &col);
  const cd phase = a(r, col) / b(r, col);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace testsupport
