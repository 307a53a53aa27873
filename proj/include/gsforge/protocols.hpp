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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gsforge/graph.hpp"
#include "gsforge/ir.hpp"

namespace gsforge {

enum class Strategy { Sequential, Parallel };
std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string &s);

/// How an auxiliary qubit is released at the end of a tree arm. X with a Z
/// correction on the arm's last photon is the default; Y additionally needs
/// virtual phase corrections; Z is kept only to show that it fails.
struct TreeOptions {
  Basis aux_basis = Basis::X;
};

// Flavor-independent programs (CNOT and CZ only, MEASURE in any basis).

/// k PGUs, n emission cycles; photon of cycle c from PGU r is output r*n + c.
CircuitIR cluster_program(std::size_t k, std::size_t n);
/// Outputs: anchor (root) then photons in breadth-first order.
CircuitIR tree_program(std::size_t b0, std::size_t b1, Strategy s, const TreeOptions &opt = {});
/// [b0,1] tree followed by a Y measurement of the anchor; outputs are the
/// cores then the leaves.
CircuitIR rgs_program(std::size_t b0, Strategy s);

/// Target graph named by a compiled circuit's protocol and parameters
/// (cluster, tree, rgs). Throws ValidationError for other protocols.
Graph target_graph(const CircuitIR &c);

CircuitIR compile_cluster(std::size_t k, std::size_t n, Flavor f);
CircuitIR compile_tree(std::size_t b0, std::size_t b1, Flavor f, Strategy s, const TreeOptions &opt = {});
CircuitIR compile_rgs(std::size_t b0, Flavor f, Strategy s);

/// Register layout of the Shor logical circuit.
struct ShorLayout {
  QubitId aux;
  std::vector<QubitId> emitters;
  std::vector<QubitId> photons;
};

/// Unlowered: logical |0> on nine emitters (Prepare), then nine CZ from the
/// auxiliary, nine emissions and a final H on the auxiliary (Generate).
CircuitIR compile_shor_logical();
ShorLayout shor_layout(const CircuitIR &c);

/// CZ written as (post) CR (pre) with single-qubit Cliffords on each side.
struct CzDecomposition {
  std::vector<Prim> pre_control, pre_target, post_control, post_target;
  std::size_t nontrivial_slots() const;
};

/// The 24 single-qubit Cliffords, each as a shortest word in the primitive
/// set (index 0 is the identity, the empty word).
const std::vector<std::vector<Prim>> &single_qubit_cliffords();

/// Every decomposition with the fewest non-identity slots.
std::vector<CzDecomposition> cz_via_cr_solutions();

/// The decomposition used by lower() for FF: the first minimal solution whose
/// fused census matches the per-cycle cluster counts and the parallel tree
/// counts.
const CzDecomposition &cz_via_cr();

/// Native gate set per flavor plus single-qubit fusion.
///   FF: CNOT onto an emitter stays native; other CNOTs become Rz+ Rx+ CR; CZ
///       uses cz_via_cr().
///   TF: CNOT -> H CZ H on the target; CR in the input is rejected.
///   MEASURE X/Y -> basis change + MEASURE Z (and the inverse change when the
///   qubit is used again).
CircuitIR lower(const CircuitIR &c, Flavor f);
CircuitIR lower(const CircuitIR &c, Flavor f, const CzDecomposition &cz);

/// Merges adjacent single-qubit gates per qubit within a stage; gates that
/// fuse to the identity are removed.
CircuitIR fuse(const CircuitIR &c);

struct GateCounts {
  std::map<std::string, std::size_t> counts;  // SQG CNOT CZ CR EMIT MEASURE COND VRZ
  double idle_windows = 0.0;                  // qubit-windows of length tau

  std::size_t operator[](const std::string &kind) const;
  std::string to_json() const;
  std::string to_text() const;
};

/// Tallies by kind. `stages` restricts the count; nullopt counts everything.
GateCounts census(const CircuitIR &c, const std::optional<std::set<Stage>> &stages = std::nullopt);

enum class Encoding { Fock, TimeBin, FrequencyBin, TwoRail };
Encoding encoding_from_string(const std::string &s);

/// Generation time of one photonic qubit.
double encoding_time(Encoding e, double tau_cnot, double tau_x, double tau_0);

}  // namespace gsforge
