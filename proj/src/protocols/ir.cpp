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

#include "gsforge/ir.hpp"

#include <set>
#include <sstream>
#include <type_traits>

#include <nlohmann/json.hpp>

#include "gsforge/errors.hpp"

namespace gsforge {

std::string to_string(Role r) {
  switch (r) {
    case Role::Anchor: return "anchor";
    case Role::Auxiliary: return "auxiliary";
    case Role::Emitter: return "emitter";
    case Role::Photon: return "photon";
  }
  return "?";
}

std::string to_string(Flavor f) { return f == Flavor::FF ? "ff" : "tf"; }

Flavor flavor_from_string(const std::string &s) {
  if (s == "ff" || s == "FF") return Flavor::FF;
  if (s == "tf" || s == "TF") return Flavor::TF;
  throw ValidationError("unknown flavor: " + s);
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::X: return "X";
    case Basis::Y: return "Y";
    case Basis::Z: return "Z";
  }
  return "?";
}

std::string to_string(Stage s) {
  switch (s) {
    case Stage::Prepare: return "prepare";
    case Stage::Generate: return "generate";
    case Stage::Convert: return "convert";
    case Stage::Disentangle: return "disentangle";
  }
  return "?";
}

std::string to_string(Prim p) {
  switch (p) {
    case Prim::H: return "H";
    case Prim::X: return "X";
    case Prim::Z: return "Z";
    case Prim::RXP: return "RX+";
    case Prim::RXM: return "RX-";
    case Prim::RZP: return "RZ+";
    case Prim::RZM: return "RZ-";
  }
  return "?";
}

std::string to_string(TwoQubitKind k) {
  switch (k) {
    case TwoQubitKind::CNOT: return "CNOT";
    case TwoQubitKind::CZ: return "CZ";
    case TwoQubitKind::CR: return "CR";
  }
  return "?";
}

QubitId CircuitIR::add_qubit(Role role) {
  QubitInfo info{role, role == Role::Photon ? "p" + std::to_string(photons_++)
                                            : "q" + std::to_string(matter_++)};
  qubits_.push_back(std::move(info));
  return qubits_.size() - 1;
}

std::size_t CircuitIR::photon_count() const { return photons_; }

std::size_t CircuitIR::measurement_count() const {
  std::size_t n = 0;
  for (const auto &ins : body_) n += std::holds_alternative<Measure>(ins.op) ? 1 : 0;
  return n;
}

void CircuitIR::append(Op op) { body_.push_back({std::move(op), stage}); }

void CircuitIR::sq(QubitId q, Prim p) { append(SqGate{q, {p}}); }
void CircuitIR::cnot(QubitId c, QubitId t) { append(TwoQubitGate{TwoQubitKind::CNOT, c, t}); }
void CircuitIR::cz(QubitId a, QubitId b) { append(TwoQubitGate{TwoQubitKind::CZ, a, b}); }
void CircuitIR::cr(QubitId c, QubitId t) { append(TwoQubitGate{TwoQubitKind::CR, c, t}); }

QubitId CircuitIR::emit(QubitId emitter) {
  const QubitId p = add_qubit(Role::Photon);
  append(Emit{emitter, p});
  return p;
}

MeasId CircuitIR::measure(QubitId q, Basis b) {
  const MeasId id = next_meas_++;
  append(Measure{q, b, id});
  return id;
}

void CircuitIR::idle(std::vector<QubitId> qs, double windows) { append(Idle{std::move(qs), windows}); }

void CircuitIR::cond(MeasId id, int trigger, QubitId target, Pauli p) {
  append(CondPauli{id, trigger, target, p});
}

void CircuitIR::vrz(QubitId q, int sign) { append(VirtualRz{q, sign}); }

void CircuitIR::validate() const {
  const std::size_t n = qubits_.size();
  std::vector<bool> emitted(n, false);
  std::set<MeasId> seen;
  auto live = [&](QubitId q, const char *what) {
    if (q >= n) throw ValidationError(std::string(what) + ": undeclared qubit " + std::to_string(q));
    if (qubits_[q].role == Role::Photon && !emitted[q])
      throw ValidationError(std::string(what) + ": photon " + qubits_[q].name + " used before emission");
  };
  for (const auto &ins : body_) {
    std::visit(
        [&](const auto &op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, SqGate>) {
            live(op.qubit, "gate");
            if (op.parts.empty()) throw ValidationError("gate: empty single-qubit gate");
          } else if constexpr (std::is_same_v<T, TwoQubitGate>) {
            live(op.control, "gate");
            live(op.target, "gate");
            if (op.control == op.target) throw ValidationError("gate: operands must differ");
          } else if constexpr (std::is_same_v<T, Emit>) {
            live(op.emitter, "emit");
            if (op.photon >= n || qubits_[op.photon].role != Role::Photon || emitted[op.photon])
              throw ValidationError("emit: target is not a fresh photon");
            if (qubits_[op.emitter].role == Role::Photon) throw ValidationError("emit: photons cannot emit");
            emitted[op.photon] = true;
          } else if constexpr (std::is_same_v<T, Measure>) {
            live(op.qubit, "measure");
            if (!seen.insert(op.id).second) throw ValidationError("measure: duplicate id m" + std::to_string(op.id));
          } else if constexpr (std::is_same_v<T, Idle>) {
            for (auto q : op.qubits) live(q, "idle");
            if (!(op.windows > 0.0)) throw ValidationError("idle: duration must be positive");
          } else if constexpr (std::is_same_v<T, CondPauli>) {
            live(op.target, "cond");
            if (!seen.count(op.id)) throw ValidationError("cond: unknown measurement m" + std::to_string(op.id));
            if (op.trigger != 1 && op.trigger != -1) throw ValidationError("cond: trigger must be +1 or -1");
          } else if constexpr (std::is_same_v<T, VirtualRz>) {
            live(op.qubit, "vrz");
            if (op.sign != 1 && op.sign != -1) throw ValidationError("vrz: sign must be +1 or -1");
          }
        },
        ins.op);
  }
  for (auto q : outputs)
    if (q >= n) throw ValidationError("outputs: undeclared qubit");
}

std::string instruction_text(const CircuitIR &c, const Instruction &ins) {
  const auto &qs = c.qubits();
  std::ostringstream os;
  std::visit(
      [&](const auto &op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, SqGate>) {
          if (op.parts.size() == 1) {
            os << to_string(op.parts[0]) << ' ' << qs[op.qubit].name;
          } else {
            os << "SQG " << qs[op.qubit].name << ' ';
            for (std::size_t i = 0; i < op.parts.size(); ++i) os << (i ? "," : "") << to_string(op.parts[i]);
          }
        } else if constexpr (std::is_same_v<T, TwoQubitGate>) {
          os << to_string(op.kind) << ' ' << qs[op.control].name << ' ' << qs[op.target].name;
        } else if constexpr (std::is_same_v<T, Emit>) {
          os << "EMIT " << qs[op.emitter].name << " -> " << qs[op.photon].name;
        } else if constexpr (std::is_same_v<T, Measure>) {
          os << "MEASURE " << qs[op.qubit].name << ' ' << to_string(op.basis) << " m" << op.id;
        } else if constexpr (std::is_same_v<T, Idle>) {
          os << "IDLE ";
          for (std::size_t i = 0; i < op.qubits.size(); ++i) os << (i ? "," : "") << qs[op.qubits[i]].name;
          os << ' ';
          if (op.windows == 1.0)
            os << "tau";
          else
            os << op.windows << "*tau";
        } else if constexpr (std::is_same_v<T, CondPauli>) {
          os << "COND m" << op.id << ' ' << (op.trigger > 0 ? "+1" : "-1") << ' ' << pauli_char(op.pauli) << ' '
             << qs[op.target].name;
        } else if constexpr (std::is_same_v<T, VirtualRz>) {
          os << (op.sign > 0 ? "VRZ+ " : "VRZ- ") << qs[op.qubit].name;
        }
      },
      ins.op);
  return os.str();
}

std::string CircuitIR::header_json() const {
  nlohmann::json j;
  j["protocol"] = protocol;
  j["flavor"] = to_string(flavor);
  j["params"] = params;
  j["qubits"] = nlohmann::json::array();
  for (const auto &q : qubits_) j["qubits"].push_back({{"id", q.name}, {"role", to_string(q.role)}});
  j["outputs"] = nlohmann::json::array();
  for (auto q : outputs) j["outputs"].push_back(qubits_[q].name);
  return j.dump();
}

std::string CircuitIR::to_text() const {
  std::ostringstream os;
  os << header_json() << '\n';
  bool first = true;
  Stage current = Stage::Generate;
  for (const auto &ins : body_) {
    if (first || ins.stage != current) {
      os << "# stage " << to_string(ins.stage) << '\n';
      current = ins.stage;
      first = false;
    }
    os << instruction_text(*this, ins) << '\n';
  }
  return os.str();
}

}  // namespace gsforge
