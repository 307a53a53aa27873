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

#include <algorithm>
#include <deque>
#include <map>
#include <type_traits>

#include "gsforge/clifford.hpp"
#include "gsforge/errors.hpp"
#include "gsforge/protocols.hpp"

namespace gsforge {

namespace {

// Action of a single-qubit Clifford word on X and Z, signs included.
std::string clifford_key(const std::vector<Prim> &word) {
  PauliString x = PauliString::parse("X"), z = PauliString::parse("Z");
  conjugate(x, word, 0);
  conjugate(z, word, 0);
  return x.str() + z.str();
}

std::vector<QubitId> touched(const Op &op) {
  return std::visit(
      [](const auto &o) -> std::vector<QubitId> {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, SqGate>) return {o.qubit};
        if constexpr (std::is_same_v<T, TwoQubitGate>) return {o.control, o.target};
        if constexpr (std::is_same_v<T, Emit>) return {o.emitter, o.photon};
        if constexpr (std::is_same_v<T, Measure>) return {o.qubit};
        if constexpr (std::is_same_v<T, Idle>) return o.qubits;
        if constexpr (std::is_same_v<T, CondPauli>) return {o.target};
        if constexpr (std::is_same_v<T, VirtualRz>) return {o.qubit};
        return {};
      },
      op);
}

// Gates, emissions and measurements; frame updates and idles do not count.
bool acts_on(const Op &op, QubitId q) {
  if (std::holds_alternative<CondPauli>(op) || std::holds_alternative<Idle>(op) ||
      std::holds_alternative<VirtualRz>(op))
    return false;
  const auto t = touched(op);
  return std::find(t.begin(), t.end(), q) != t.end();
}

bool is_diagonal(const std::vector<Prim> &word) {
  PauliString z = PauliString::parse("Z");
  conjugate(z, word, 0);
  return z == PauliString::parse("Z");
}

// True when the latest instruction acting on q is a single-qubit gate of the
// stage currently being written.
bool last_is_sq_gate(const CircuitIR &c, QubitId q) {
  const auto &body = c.instructions();
  for (std::size_t i = body.size(); i-- > 0;) {
    const auto t = touched(body[i].op);
    if (std::find(t.begin(), t.end(), q) == t.end()) continue;
    return body[i].stage == c.stage && std::holds_alternative<SqGate>(body[i].op);
  }
  return false;
}

CircuitIR empty_like(const CircuitIR &c) {
  CircuitIR out = c;
  out.instructions().clear();
  return out;
}

bool matches_cluster_and_tree_counts(const CzDecomposition &cz) {
  for (std::size_t k = 2; k <= 3; ++k)
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto g = census(lower(cluster_program(k, n), Flavor::FF, cz), std::set<Stage>{Stage::Generate});
      if (g["SQG"] != 3 * (k - 1) * n) return false;
    }
  for (std::size_t b0 = 1; b0 <= 3; ++b0)
    for (std::size_t b1 = 0; b1 <= 2; ++b1) {
      const auto g = census(lower(tree_program(b0, b1, Strategy::Parallel), Flavor::FF, cz));
      if (g["SQG"] != b0 * (b1 + 1) + 2 * b0 + 1) return false;
    }
  return true;
}

}  // namespace

const std::vector<std::vector<Prim>> &single_qubit_cliffords() {
  static const std::vector<std::vector<Prim>> table = [] {
    const std::vector<Prim> gens{Prim::H, Prim::X, Prim::Z, Prim::RXP, Prim::RXM, Prim::RZP, Prim::RZM};
    std::vector<std::vector<Prim>> words{{}};
    std::map<std::string, std::size_t> seen{{clifford_key({}), 0}};
    std::deque<std::vector<Prim>> frontier{{}};
    while (!frontier.empty()) {
      const auto w = frontier.front();
      frontier.pop_front();
      for (auto g : gens) {
        auto next = w;
        next.push_back(g);
        if (seen.emplace(clifford_key(next), words.size()).second) {
          words.push_back(next);
          frontier.push_back(next);
        }
      }
    }
    if (words.size() != 24) throw ProtocolError("single-qubit Clifford enumeration did not close at 24");
    return words;
  }();
  return table;
}

std::size_t CzDecomposition::nontrivial_slots() const {
  return !pre_control.empty() + !pre_target.empty() + !post_control.empty() + !post_target.empty();
}

std::vector<CzDecomposition> cz_via_cr_solutions() {
  const auto &cl = single_qubit_cliffords();
  const std::vector<PauliString> probes{PauliString::parse("XI"), PauliString::parse("ZI"),
                                        PauliString::parse("IX"), PauliString::parse("IZ")};
  std::vector<PauliString> want = probes;
  for (auto &p : want) conjugate(p, TwoQubitKind::CZ, 0, 1);

  // Conjugating by the pre layer and CR depends only on (pc, pt); cache it.
  std::vector<CzDecomposition> best;
  std::size_t best_slots = 5;
  for (std::size_t pc = 0; pc < cl.size(); ++pc)
    for (std::size_t pt = 0; pt < cl.size(); ++pt) {
      std::vector<PauliString> mid = probes;
      for (auto &p : mid) {
        conjugate(p, cl[pc], 0);
        conjugate(p, cl[pt], 1);
        conjugate(p, TwoQubitKind::CR, 0, 1);
      }
      for (std::size_t qc = 0; qc < cl.size(); ++qc)
        for (std::size_t qt = 0; qt < cl.size(); ++qt) {
          const std::size_t slots = (pc != 0) + (pt != 0) + (qc != 0) + (qt != 0);
          if (slots > best_slots) continue;
          bool ok = true;
          for (std::size_t i = 0; ok && i < mid.size(); ++i) {
            PauliString p = mid[i];
            conjugate(p, cl[qc], 0);
            conjugate(p, cl[qt], 1);
            ok = p == want[i];
          }
          if (!ok) continue;
          if (slots < best_slots) {
            best.clear();
            best_slots = slots;
          }
          best.push_back({cl[pc], cl[pt], cl[qc], cl[qt]});
        }
    }
  return best;
}

const CzDecomposition &cz_via_cr() {
  static const CzDecomposition chosen = [] {
    auto all = cz_via_cr_solutions();
    if (all.empty()) throw ProtocolError("no CZ decomposition over CR found");
    auto parts = [](const CzDecomposition &d) {
      return d.pre_control.size() + d.pre_target.size() + d.post_control.size() + d.post_target.size();
    };
    std::stable_sort(all.begin(), all.end(),
                     [&](const auto &a, const auto &b) { return parts(a) < parts(b); });
    for (const auto &cand : all)
      if (matches_cluster_and_tree_counts(cand)) return cand;
    return all.front();
  }();
  return chosen;
}

CircuitIR lower(const CircuitIR &c, Flavor f) {
  if (f == Flavor::TF) return lower(c, f, CzDecomposition{});
  return lower(c, f, cz_via_cr());
}

CircuitIR lower(const CircuitIR &c, Flavor f, const CzDecomposition &cz) {
  c.validate();
  CircuitIR out = empty_like(c);
  out.flavor = f;
  const auto &body = c.instructions();

  // used_later[i] holds the qubits acted on by some instruction after i.
  std::vector<std::vector<bool>> used_later(body.size(), std::vector<bool>(c.qubit_count(), false));
  std::vector<bool> acc(c.qubit_count(), false);
  for (std::size_t i = body.size(); i-- > 0;) {
    used_later[i] = acc;
    for (auto q : touched(body[i].op))
      if (acts_on(body[i].op, q)) acc[q] = true;
  }

  auto gate = [&](QubitId q, const std::vector<Prim> &parts) {
    if (!parts.empty()) out.append(SqGate{q, parts});
  };

  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto &ins = body[i];
    out.stage = ins.stage;
    std::visit(
        [&](const auto &op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, TwoQubitGate>) {
            const QubitId a = op.control, b = op.target;
            switch (op.kind) {
              case TwoQubitKind::CNOT:
                if (f == Flavor::TF) {
                  out.h(b);
                  out.cz(a, b);
                  out.h(b);
                } else if (c.qubits()[b].role == Role::Emitter) {
                  out.cnot(a, b);
                } else {
                  out.sq(a, Prim::RZP);
                  out.sq(b, Prim::RXP);
                  out.cr(a, b);
                }
                break;
              case TwoQubitKind::CZ:
                if (f == Flavor::TF) {
                  out.cz(a, b);
                } else if (is_diagonal(cz.pre_control) && is_diagonal(cz.post_control)) {
                  // A phase on the control commutes with CR, so it goes to
                  // whichever side can absorb it into a neighbouring SQG.
                  std::vector<Prim> phase = cz.pre_control;
                  phase.insert(phase.end(), cz.post_control.begin(), cz.post_control.end());
                  const bool before = last_is_sq_gate(out, a);
                  if (before) gate(a, phase);
                  gate(b, cz.pre_target);
                  out.cr(a, b);
                  if (!before) gate(a, phase);
                  gate(b, cz.post_target);
                } else {
                  gate(a, cz.pre_control);
                  gate(b, cz.pre_target);
                  out.cr(a, b);
                  gate(a, cz.post_control);
                  gate(b, cz.post_target);
                }
                break;
              case TwoQubitKind::CR:
                if (f == Flavor::TF) throw ValidationError("lower: CR is not available on tunable-frequency transmons");
                out.cr(a, b);
                break;
            }
          } else if constexpr (std::is_same_v<T, Measure>) {
            const bool reuse = used_later[i][op.qubit];
            switch (op.basis) {
              case Basis::Z: out.append(op); break;
              case Basis::X:
                out.h(op.qubit);
                out.append(Measure{op.qubit, Basis::Z, op.id});
                if (reuse) out.h(op.qubit);
                break;
              case Basis::Y:
                out.sq(op.qubit, Prim::RXP);
                out.append(Measure{op.qubit, Basis::Z, op.id});
                if (reuse) out.sq(op.qubit, Prim::RXM);
                break;
            }
          } else {
            out.append(op);
          }
        },
        ins.op);
  }
  out.stage = Stage::Generate;
  return fuse(out);
}

CircuitIR fuse(const CircuitIR &c) {
  CircuitIR out = empty_like(c);
  auto &ob = out.instructions();
  std::map<QubitId, std::size_t> open;  // qubit -> index of its fusable gate in ob
  bool first = true;
  Stage stage = Stage::Generate;
  for (const auto &ins : c.instructions()) {
    if (first || ins.stage != stage) {
      open.clear();
      stage = ins.stage;
      first = false;
    }
    if (const auto *g = std::get_if<SqGate>(&ins.op)) {
      auto it = open.find(g->qubit);
      if (it != open.end()) {
        auto &parts = std::get<SqGate>(ob[it->second].op).parts;
        parts.insert(parts.end(), g->parts.begin(), g->parts.end());
      } else {
        open[g->qubit] = ob.size();
        ob.push_back(ins);
      }
      continue;
    }
    for (auto q : touched(ins.op)) open.erase(q);
    ob.push_back(ins);
  }

  // Replace each fused word by the shortest equivalent one; drop identities.
  const auto &table = single_qubit_cliffords();
  std::map<std::string, const std::vector<Prim> *> shortest;
  for (const auto &w : table) shortest.emplace(clifford_key(w), &w);
  std::vector<Instruction> kept;
  kept.reserve(ob.size());
  for (auto &ins : ob) {
    if (auto *g = std::get_if<SqGate>(&ins.op)) {
      if (g->parts.size() > 1) g->parts = *shortest.at(clifford_key(g->parts));
      if (g->parts.empty()) continue;
    }
    kept.push_back(std::move(ins));
  }
  ob = std::move(kept);
  return out;
}

}  // namespace gsforge
