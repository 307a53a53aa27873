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

#include <nlohmann/json.hpp>

#include "gsforge/errors.hpp"

namespace gsforge {

void conjugate(PauliString &p, Prim g, std::size_t q) {
  const bool x = p.x(q), z = p.z(q);
  switch (g) {
    case Prim::H:
      p.set_x(q, z);
      p.set_z(q, x);
      if (x && z) p.flip_sign();
      break;
    case Prim::X:
      if (z) p.flip_sign();
      break;
    case Prim::Z:
      if (x) p.flip_sign();
      break;
    case Prim::RZP:  // X -> Y, Y -> -X
      if (x && z) p.flip_sign();
      p.set_z(q, z != x);
      break;
    case Prim::RZM:  // X -> -Y, Y -> X
      if (x && !z) p.flip_sign();
      p.set_z(q, z != x);
      break;
    case Prim::RXP:  // Z -> -Y, Y -> Z
      if (z && !x) p.flip_sign();
      p.set_x(q, x != z);
      break;
    case Prim::RXM:  // Z -> Y, Y -> -Z
      if (x && z) p.flip_sign();
      p.set_x(q, x != z);
      break;
  }
}

namespace {

void conjugate_cnot(PauliString &p, std::size_t c, std::size_t t) {
  const bool xc = p.x(c), zc = p.z(c), xt = p.x(t), zt = p.z(t);
  if (xc && zt && (xt == zc)) p.flip_sign();
  p.set_x(t, xt != xc);
  p.set_z(c, zc != zt);
}

}  // namespace

void conjugate(PauliString &p, TwoQubitKind g, std::size_t control, std::size_t target) {
  switch (g) {
    case TwoQubitKind::CNOT:
      conjugate_cnot(p, control, target);
      break;
    case TwoQubitKind::CZ:
      conjugate(p, Prim::H, target);
      conjugate_cnot(p, control, target);
      conjugate(p, Prim::H, target);
      break;
    case TwoQubitKind::CR:
      // exp(i pi/4 Z_c X_t) = e^{-i pi/4} CNOT Rz_c(-pi/2) Rx_t(-pi/2); the
      // three factors commute.
      conjugate(p, Prim::RZM, control);
      conjugate(p, Prim::RXM, target);
      conjugate_cnot(p, control, target);
      break;
  }
}

void conjugate_swap(PauliString &p, std::size_t a, std::size_t b) {
  const Pauli pa = p.at(a);
  p.set(a, p.at(b));
  p.set(b, pa);
}

void conjugate(PauliString &p, const std::vector<Prim> &parts, std::size_t q) {
  for (auto g : parts) conjugate(p, g, q);
}

bool is_identity_clifford(const std::vector<Prim> &parts) {
  PauliString x = PauliString::parse("X"), z = PauliString::parse("Z");
  conjugate(x, parts, 0);
  conjugate(z, parts, 0);
  return x == PauliString::parse("X") && z == PauliString::parse("Z");
}

void apply(StabilizerTableau &t, Prim g, std::size_t q) {
  if (q >= t.qubits()) throw ValidationError("apply: qubit out of range");
  for (auto &r : t.generators()) conjugate(r, g, q);
}

void apply(StabilizerTableau &t, TwoQubitKind g, std::size_t control, std::size_t target) {
  if (control >= t.qubits() || target >= t.qubits() || control == target)
    throw ValidationError("apply: bad two-qubit operands");
  for (auto &r : t.generators()) conjugate(r, g, control, target);
}

StabilizerTableau applied(StabilizerTableau t, Prim g, std::size_t q) {
  apply(t, g, q);
  return t;
}

StabilizerTableau applied(StabilizerTableau t, TwoQubitKind g, std::size_t control, std::size_t target) {
  apply(t, g, control, target);
  return t;
}

namespace {

Pauli basis_pauli(Basis b) {
  switch (b) {
    case Basis::X: return Pauli::X;
    case Basis::Y: return Pauli::Y;
    case Basis::Z: return Pauli::Z;
  }
  return Pauli::I;
}

}  // namespace

MeasureResult measure(StabilizerTableau &t, std::size_t q, Basis basis, std::optional<int> forced,
                      std::mt19937_64 *rng) {
  if (q >= t.qubits()) throw ValidationError("measure: qubit out of range");
  if (forced && *forced != 1 && *forced != -1) throw ValidationError("measure: forced value must be +1 or -1");
  const PauliString obs = PauliString::single(t.qubits(), q, basis_pauli(basis));

  auto &rows = t.generators();
  std::vector<std::size_t> anti;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].commutes(obs)) anti.push_back(i);

  if (anti.empty()) {
    const auto sign = t.membership(obs);
    if (!sign) throw ProtocolError("measure: tableau is not a pure state");
    if (forced && *forced != *sign)
      throw ProtocolError("measure: forced outcome contradicts a deterministic result");
    return {*sign, true};
  }

  int value;
  if (forced) {
    value = *forced;
  } else if (rng) {
    value = std::bernoulli_distribution(0.5)(*rng) ? -1 : 1;
  } else {
    throw ProtocolError("measure: random outcome needs an rng or a forced value");
  }
  const std::size_t pivot = anti.front();
  for (std::size_t k = 1; k < anti.size(); ++k) rows[anti[k]].multiply_by(rows[pivot]);
  rows[pivot] = obs;
  rows[pivot].set_negative(value < 0);
  return {value, false};
}

std::size_t emit(StabilizerTableau &t, std::size_t emitter) {
  if (emitter >= t.qubits()) throw ValidationError("emit: emitter out of range");
  const std::size_t photon = t.add_qubit();
  for (auto &r : t.generators()) conjugate_swap(r, emitter, photon);
  return photon;
}

void PauliFrame::toggle(std::size_t q, Pauli p) {
  const auto v = static_cast<std::uint8_t>(p);
  p_.set_x(q, p_.x(q) != ((v & 1) != 0));
  p_.set_z(q, p_.z(q) != ((v & 2) != 0));
}

StabilizerTableau PauliFrame::applied_to(const StabilizerTableau &t) const {
  StabilizerTableau out = t;
  for (auto &r : out.generators())
    if (!r.commutes(p_)) r.flip_sign();
  return out;
}

namespace {

// Called for each random measurement; returns the raw outcome.
using Decider = std::function<int(MeasId)>;

RunResult run_impl(const CircuitIR &c, const std::optional<std::map<MeasId, int>> &forced, const Decider &decide) {
  c.validate();
  const std::size_t n = c.qubit_count();
  RunResult res{StabilizerTableau(n), {}, PauliFrame(n), 0};
  std::map<MeasId, int> corrected;
  auto &t = res.final_state;
  auto &frame = res.frame.pauli();

  const auto &body = c.instructions();
  for (std::size_t idx = 0; idx < body.size(); ++idx) {
    std::visit(
        [&](const auto &op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, SqGate>) {
            for (auto g : op.parts) {
              apply(t, g, op.qubit);
              conjugate(frame, g, op.qubit);
            }
          } else if constexpr (std::is_same_v<T, TwoQubitGate>) {
            apply(t, op.kind, op.control, op.target);
            conjugate(frame, op.kind, op.control, op.target);
          } else if constexpr (std::is_same_v<T, Emit>) {
            // The photon slot is still |0>, so a swap is exactly emission.
            for (auto &r : t.generators()) conjugate_swap(r, op.emitter, op.photon);
            conjugate_swap(frame, op.emitter, op.photon);
            ++res.emissions;
          } else if constexpr (std::is_same_v<T, Measure>) {
            const Pauli bp = basis_pauli(op.basis);
            const PauliString obs = PauliString::single(n, op.qubit, bp);
            bool deterministic = true;
            for (const auto &r : t.generators()) deterministic = deterministic && r.commutes(obs);
            std::optional<int> value;
            if (forced) {
              auto it = forced->find(op.id);
              if (it != forced->end()) value = it->second;
              else if (!deterministic)
                throw ValidationError("run: no forced outcome for random measurement m" + std::to_string(op.id));
            } else if (!deterministic) {
              value = decide(op.id);
            }
            const auto mr = measure(t, op.qubit, op.basis, value, nullptr);
            const bool flip = !frame.commutes(obs);
            const int corr = flip ? -mr.value : mr.value;
            corrected[op.id] = corr;
            res.outcomes.push_back({op.id, idx, mr.value, corr, mr.deterministic});
            // The part of the frame along the measured axis is now a phase.
            if (op.basis == Basis::Z) frame.set_z(op.qubit, false);
            else if (op.basis == Basis::X) frame.set_x(op.qubit, false);
            else if (frame.at(op.qubit) == Pauli::Y) frame.set(op.qubit, Pauli::I);
          } else if constexpr (std::is_same_v<T, Idle>) {
            // no-op on ideal states
          } else if constexpr (std::is_same_v<T, CondPauli>) {
            if (corrected.at(op.id) == op.trigger) res.frame.toggle(op.target, op.pauli);
          } else if constexpr (std::is_same_v<T, VirtualRz>) {
            const Prim g = op.sign > 0 ? Prim::RZP : Prim::RZM;
            apply(t, g, op.qubit);
            conjugate(frame, g, op.qubit);
          }
        },
        body[idx].op);
  }
  frame.set_negative(false);
  return res;
}

}  // namespace

RunResult run(const CircuitIR &c, const OutcomePolicy &policy) {
  if (policy.seed) {
    std::mt19937_64 rng(*policy.seed);
    return run_impl(c, std::nullopt, [&rng](MeasId) { return std::bernoulli_distribution(0.5)(rng) ? -1 : 1; });
  }
  return run_impl(c, policy.forced_values, [](MeasId) -> int { return 1; });
}

BranchCheck for_each_branch(const CircuitIR &c,
                            const std::function<std::optional<std::string>(const RunResult &)> &check) {
  BranchCheck out;
  std::vector<int> script;  // 0 -> +1, 1 -> -1, one entry per random measurement
  while (true) {
    std::size_t pos = 0;
    auto res = run_impl(c, std::nullopt, [&](MeasId) {
      if (pos == script.size()) script.push_back(0);
      return script[pos++] ? -1 : 1;
    });
    script.resize(pos);
    ++out.branches;
    if (auto why = check(res)) {
      out.failure = std::move(why);
      return out;
    }
    while (!script.empty() && script.back() == 1) script.pop_back();
    if (script.empty()) break;
    script.back() = 1;
  }
  return out;
}

namespace {

std::optional<VerificationFailure> check_branch(const CircuitIR &c, const StabilizerTableau &expected,
                                                const RunResult &res) {
  auto raw_outcomes = [&] {
    std::vector<int> v;
    for (const auto &o : res.outcomes) v.push_back(o.raw);
    return v;
  };
  const auto state = res.corrected_state();
  const auto reduced = restrict_to(state, c.outputs);
  if (reduced.generators().size() != c.outputs.size()) {
    return VerificationFailure{raw_outcomes(), "matter qubits are still entangled with the outputs",
                               expected.strings(), reduced.strings()};
  }
  const auto actual = canonical_form(reduced);
  if (actual != expected) {
    return VerificationFailure{raw_outcomes(), "output state differs from the target graph state",
                               expected.strings(), actual.strings()};
  }
  return std::nullopt;
}

}  // namespace

VerificationReport verify(const CircuitIR &c, const Graph &target, const VerifyMode &mode) {
  if (c.outputs.size() != target.vertex_count())
    throw ValidationError("verify: circuit has " + std::to_string(c.outputs.size()) +
                          " outputs but the target has " + std::to_string(target.vertex_count()) + " vertices");
  VerificationReport rep{target, 0, true, std::nullopt};
  const auto expected = canonical_form(stabilizers_of(target));

  if (mode.exhaustive_branches) {
    auto bc = for_each_branch(c, [&](const RunResult &res) -> std::optional<std::string> {
      if (auto f = check_branch(c, expected, res)) {
        rep.first_failure = std::move(f);
        return rep.first_failure->reason;
      }
      return std::nullopt;
    });
    rep.branches_checked = bc.branches;
    rep.all_pass = !bc.failure.has_value();
    return rep;
  }

  for (std::size_t i = 0; i < mode.trials; ++i) {
    const auto res = run(c, OutcomePolicy::sample(mode.seed + i));
    ++rep.branches_checked;
    if (auto f = check_branch(c, expected, res)) {
      rep.first_failure = std::move(f);
      rep.all_pass = false;
      return rep;
    }
  }
  return rep;
}

std::string RunResult::to_json() const {
  nlohmann::json j;
  j["final_state"] = final_state.strings();
  j["corrected_state"] = corrected_state().strings();
  j["frame"] = frame.pauli().str().substr(1);
  j["emissions"] = emissions;
  j["outcomes"] = nlohmann::json::array();
  for (const auto &o : outcomes)
    j["outcomes"].push_back({{"id", o.id},
                             {"instruction", o.instruction},
                             {"raw", o.raw},
                             {"corrected", o.corrected},
                             {"deterministic", o.deterministic}});
  return j.dump();
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["target"] = nlohmann::json::parse(target.to_json());
  j["branches_checked"] = branches_checked;
  j["all_pass"] = all_pass;
  if (first_failure) {
    j["first_failure"] = {{"outcomes", first_failure->outcomes},
                          {"reason", first_failure->reason},
                          {"expected", first_failure->expected},
                          {"actual", first_failure->actual}};
  } else {
    j["first_failure"] = nullptr;
  }
  return j.dump();
}

}  // namespace gsforge
