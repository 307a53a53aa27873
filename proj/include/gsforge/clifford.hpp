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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gsforge/graph.hpp"
#include "gsforge/ir.hpp"
#include "gsforge/tableau.hpp"

namespace gsforge {

// Heisenberg-picture updates P -> U P U^dagger, signs included.
void conjugate(PauliString &p, Prim g, std::size_t q);
void conjugate(PauliString &p, TwoQubitKind g, std::size_t control, std::size_t target);
void conjugate_swap(PauliString &p, std::size_t a, std::size_t b);

/// Single-qubit Clifford implemented by a fused gate (in time order).
void conjugate(PauliString &p, const std::vector<Prim> &parts, std::size_t q);

/// True when the fused primitives act as the identity up to global phase.
bool is_identity_clifford(const std::vector<Prim> &parts);

void apply(StabilizerTableau &t, Prim g, std::size_t q);
void apply(StabilizerTableau &t, TwoQubitKind g, std::size_t control, std::size_t target);
StabilizerTableau applied(StabilizerTableau t, Prim g, std::size_t q);
StabilizerTableau applied(StabilizerTableau t, TwoQubitKind g, std::size_t control, std::size_t target);

struct MeasureResult {
  int value;  // +1 or -1
  bool deterministic;
};

/// Measures the single-qubit Pauli `basis` on qubit q. Deterministic outcomes
/// never touch `rng`. A `forced` value picks a random outcome and must match a
/// deterministic one (ProtocolError otherwise).
MeasureResult measure(StabilizerTableau &t, std::size_t q, Basis basis, std::optional<int> forced,
                      std::mt19937_64 *rng);

/// Appends a |0> photon and swaps it with the emitter; returns the photon index.
std::size_t emit(StabilizerTableau &t, std::size_t emitter);

/// Accumulated virtual Pauli corrections, tracked modulo global phase.
class PauliFrame {
 public:
  PauliFrame() = default;
  explicit PauliFrame(std::size_t n) : p_(n) {}

  std::size_t size() const { return p_.size(); }
  Pauli at(std::size_t q) const { return p_.at(q); }
  void toggle(std::size_t q, Pauli p);
  const PauliString &pauli() const { return p_; }
  PauliString &pauli() { return p_; }

  /// Flips the sign of every generator that anticommutes with the frame.
  StabilizerTableau applied_to(const StabilizerTableau &t) const;

 private:
  PauliString p_;
};

struct OutcomeRecord {
  MeasId id;
  std::size_t instruction;
  int raw;        // what the tableau produced
  int corrected;  // raw, flipped when the frame anticommutes with the basis
  bool deterministic;
};

struct RunResult {
  StabilizerTableau final_state;  // registry order, frame not applied
  std::vector<OutcomeRecord> outcomes;
  PauliFrame frame;
  std::size_t emissions = 0;

  StabilizerTableau corrected_state() const { return frame.applied_to(final_state); }
  std::string to_json() const;
};

/// Either sampled outcomes (seeded) or a forced raw outcome per measurement id.
struct OutcomePolicy {
  static OutcomePolicy sample(std::uint64_t seed) { return {seed, {}}; }
  static OutcomePolicy forced(std::map<MeasId, int> values) { return {std::nullopt, std::move(values)}; }

  std::optional<std::uint64_t> seed;
  std::map<MeasId, int> forced_values;
};

/// Executes a circuit on |0...0> (photons are allocated in |0> and filled by
/// EMIT). IDLE is a no-op; COND corrections go to the frame, never the
/// tableau. Forced mode requires a value for every random measurement.
RunResult run(const CircuitIR &c, const OutcomePolicy &policy);

struct VerifyMode {
  static VerifyMode exhaustive() { return {true, 0, 0}; }
  static VerifyMode sampled(std::size_t trials, std::uint64_t seed) { return {false, trials, seed}; }
  bool exhaustive_branches;
  std::size_t trials;
  std::uint64_t seed;
};

struct VerificationFailure {
  std::vector<int> outcomes;  // raw outcomes in instruction order
  std::string reason;
  std::vector<std::string> expected;  // canonical generators
  std::vector<std::string> actual;
};

struct VerificationReport {
  Graph target;
  std::size_t branches_checked = 0;
  bool all_pass = false;
  std::optional<VerificationFailure> first_failure;

  std::string to_json() const;
};

/// Checks every measurement branch: frame applied, matter qubits outside
/// `c.outputs` must be in a product state, and the outputs must carry exactly
/// the graph state of `target` (canonical forms compared).
VerificationReport verify(const CircuitIR &c, const Graph &target, const VerifyMode &mode);

/// Same branch machinery with a caller-supplied check on the corrected final
/// state; returns the first failing reason, if any.
struct BranchCheck {
  std::size_t branches = 0;
  std::optional<std::string> failure;
};
BranchCheck for_each_branch(const CircuitIR &c,
                            const std::function<std::optional<std::string>(const RunResult &)> &check);

/// Shor logical circuit: in every branch the photon block must carry the
/// eight code stabilizers and, together with the auxiliary, the logical
/// two-vertex graph state {Z_aux X_L, X_aux Z_L} (X_L = Z^9, Z_L = X^9).
struct ShorCheck {
  bool all_pass = false;
  std::size_t branches = 0;
  std::optional<std::string> failure;
};
ShorCheck check_shor_logical(const CircuitIR &c);

}  // namespace gsforge
