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

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "gsforge/pauli.hpp"

namespace gsforge {

enum class Role { Anchor, Auxiliary, Emitter, Photon };
enum class Flavor { FF, TF };
enum class Basis { X, Y, Z };

/// Where an instruction belongs in a protocol. `Disentangle` holds the
/// end-of-protocol steps that release matter qubits; the closed-form fidelity
/// expressions do not account for them.
enum class Stage { Prepare, Generate, Convert, Disentangle };

/// Single-qubit Clifford primitives. Rotations are R_a(t) = exp(-i t a / 2)
/// with t = +pi/2 (P) or -pi/2 (M).
enum class Prim { H, X, Z, RXP, RXM, RZP, RZM };

enum class TwoQubitKind { CNOT, CZ, CR };

using QubitId = std::size_t;
using MeasId = std::size_t;

/// One single-qubit gate. `parts` has one element for a primitive gate and
/// several (in time order) after fusion; either way it is one physical SQG.
struct SqGate {
  QubitId qubit;
  std::vector<Prim> parts;
};

/// CNOT and CR: first operand is the control. CZ is symmetric but the order
/// decides how it is lowered.
struct TwoQubitGate {
  TwoQubitKind kind;
  QubitId control;
  QubitId target;
};

/// Photon emission: the emitter state is swapped onto a fresh photon and the
/// emitter returns to |0>.
struct Emit {
  QubitId emitter;
  QubitId photon;
};

struct Measure {
  QubitId qubit;
  Basis basis;
  MeasId id;
};

/// Idle window of `windows` emission times on every listed qubit.
struct Idle {
  std::vector<QubitId> qubits;
  double windows = 1.0;
};

/// Virtual Pauli correction applied (in the Pauli frame) when measurement `id`
/// reports `trigger`.
struct CondPauli {
  MeasId id;
  int trigger;
  QubitId target;
  Pauli pauli;
};

/// Virtual Z rotation by +/-pi/2 on a photon (lab-frame phase update).
struct VirtualRz {
  QubitId qubit;
  int sign;
};

using Op = std::variant<SqGate, TwoQubitGate, Emit, Measure, Idle, CondPauli, VirtualRz>;

struct Instruction {
  Op op;
  Stage stage = Stage::Generate;
};

struct QubitInfo {
  Role role;
  std::string name;  // q<k> for matter, p<k> for photons (emission order)
};

/// Ordered gate-level program over role-tagged qubits.
class CircuitIR {
 public:
  std::string protocol;
  Flavor flavor = Flavor::FF;
  std::map<std::string, std::string> params;

  QubitId add_qubit(Role role);
  const std::vector<QubitInfo> &qubits() const { return qubits_; }
  std::size_t qubit_count() const { return qubits_.size(); }
  std::size_t photon_count() const;
  std::size_t measurement_count() const;

  const std::vector<Instruction> &instructions() const { return body_; }
  std::vector<Instruction> &instructions() { return body_; }

  /// Qubits (photons and retained matter) in target-vertex order.
  std::vector<QubitId> outputs;

  Stage stage = Stage::Generate;  // stage stamped on appended instructions

  void sq(QubitId q, Prim p);
  void h(QubitId q) { sq(q, Prim::H); }
  void cnot(QubitId c, QubitId t);
  void cz(QubitId a, QubitId b);
  void cr(QubitId c, QubitId t);
  QubitId emit(QubitId emitter);
  MeasId measure(QubitId q, Basis b);
  void idle(std::vector<QubitId> qs, double windows = 1.0);
  void cond(MeasId id, int trigger, QubitId target, Pauli p);
  void vrz(QubitId q, int sign);
  void append(Op op);

  /// Throws ValidationError on undeclared operands, duplicate measurement
  /// ids, photons used before emission, bad triggers or non-positive idles.
  void validate() const;

  /// First line: JSON header (protocol, flavor, params, qubits, outputs);
  /// then one instruction per line, with "# stage <name>" lines whenever the
  /// stage changes.
  std::string to_text() const;

  /// Header as JSON (same object as the first line of to_text()).
  std::string header_json() const;

 private:
  std::vector<QubitInfo> qubits_;
  std::vector<Instruction> body_;
  MeasId next_meas_ = 0;
  std::size_t matter_ = 0;
  std::size_t photons_ = 0;
};

std::string to_string(Role r);
std::string to_string(Flavor f);
std::string to_string(Basis b);
std::string to_string(Stage s);
std::string to_string(Prim p);
std::string to_string(TwoQubitKind k);
Flavor flavor_from_string(const std::string &s);

std::string instruction_text(const CircuitIR &c, const Instruction &ins);

}  // namespace gsforge
