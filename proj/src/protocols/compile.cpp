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

#include <string>

#include "gsforge/errors.hpp"
#include "gsforge/protocols.hpp"

namespace gsforge {

namespace {

// Sign of the virtual phase applied to each core photon after the anchor's Y
// measurement. Fixed by stabilizer verification of every branch.
constexpr int kRgsPhaseSign = -1;

}  // namespace

std::string to_string(Strategy s) { return s == Strategy::Parallel ? "parallel" : "sequential"; }

Strategy strategy_from_string(const std::string &s) {
  if (s == "parallel") return Strategy::Parallel;
  if (s == "sequential") return Strategy::Sequential;
  throw ValidationError("unknown strategy: " + s);
}

CircuitIR cluster_program(std::size_t k, std::size_t n) {
  if (k < 1 || n < 1) throw ValidationError("cluster needs k >= 1 and n >= 1");
  CircuitIR c;
  c.protocol = "cluster";
  c.params = {{"k", std::to_string(k)}, {"n", std::to_string(n)}};
  std::vector<QubitId> aux(k), em(k);
  for (std::size_t r = 0; r < k; ++r) {
    aux[r] = c.add_qubit(Role::Auxiliary);
    em[r] = c.add_qubit(Role::Emitter);
  }
  std::vector<std::vector<QubitId>> photon(k, std::vector<QubitId>(n));
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t r = 0; r < k; ++r) c.h(aux[r]);
    for (std::size_t r = k - 1; r-- > 0;) c.cz(aux[r], aux[r + 1]);
    for (std::size_t r = 0; r < k; ++r) c.cnot(aux[r], em[r]);
    for (std::size_t r = 0; r < k; ++r) photon[r][col] = c.emit(em[r]);
    c.idle(aux);
  }
  // The auxiliaries stay entangled with the last column; an X measurement
  // releases each one at the cost of a Z correction on its row's last photon.
  c.stage = Stage::Disentangle;
  for (std::size_t r = 0; r < k; ++r) {
    const MeasId m = c.measure(aux[r], Basis::X);
    c.cond(m, -1, photon[r][n - 1], Pauli::Z);
  }
  c.stage = Stage::Generate;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t col = 0; col < n; ++col) c.outputs.push_back(photon[r][col]);
  return c;
}

namespace {

void release_aux(CircuitIR &c, QubitId aux, QubitId last_photon, Basis basis, bool reuse) {
  const MeasId m = c.measure(aux, basis);
  if (basis == Basis::Y) c.vrz(last_photon, +1);
  c.cond(m, -1, last_photon, Pauli::Z);
  if (!reuse) return;
  // A reused auxiliary must restart in |+>. After a Y readout it holds a Y
  // eigenstate, turned back into an X eigenstate by a phase gate; the sign
  // of the outcome is then fixed in the frame.
  if (basis == Basis::Y) c.sq(aux, Prim::RZM);
  c.cond(m, -1, aux, Pauli::Z);
}

}  // namespace

CircuitIR tree_program(std::size_t b0, std::size_t b1, Strategy s, const TreeOptions &opt) {
  if (b0 < 1) throw ValidationError("tree needs b0 >= 1");
  CircuitIR c;
  c.protocol = "tree";
  c.params = {{"b0", std::to_string(b0)}, {"b1", std::to_string(b1)}, {"strategy", to_string(s)}};
  if (opt.aux_basis != Basis::X) c.params["aux_basis"] = to_string(opt.aux_basis);
  const QubitId anchor = c.add_qubit(Role::Anchor);
  std::vector<std::vector<QubitId>> arm(b0);

  if (s == Strategy::Parallel) {
    std::vector<QubitId> aux(b0), em(b0);
    for (std::size_t i = 0; i < b0; ++i) {
      aux[i] = c.add_qubit(Role::Auxiliary);
      em[i] = c.add_qubit(Role::Emitter);
    }
    for (auto a : aux) c.h(a);
    for (std::size_t r = 0; r <= b1; ++r) {
      for (std::size_t i = 0; i < b0; ++i) {
        c.cnot(aux[i], em[i]);
        if (r < b1) c.h(em[i]);
        arm[i].push_back(c.emit(em[i]));
      }
      c.idle(aux);
    }
    c.h(anchor);
    for (std::size_t i = 0; i < b0; ++i) c.cz(aux[i], anchor);
    for (std::size_t i = 0; i < b0; ++i)
      release_aux(c, aux[i], arm[i].back(), opt.aux_basis, false);
  } else {
    const QubitId aux = c.add_qubit(Role::Auxiliary);
    const QubitId em = c.add_qubit(Role::Emitter);
    c.h(anchor);
    c.h(aux);
    for (std::size_t i = 0; i < b0; ++i) {
      c.cz(aux, anchor);
      for (std::size_t r = 0; r <= b1; ++r) {
        c.cnot(aux, em);
        if (r < b1) c.h(em);
        arm[i].push_back(c.emit(em));
        c.idle({aux, anchor});
      }
      release_aux(c, aux, arm[i].back(), opt.aux_basis, i + 1 < b0);
    }
  }

  c.outputs.push_back(anchor);
  for (std::size_t i = 0; i < b0; ++i) c.outputs.push_back(arm[i].back());
  for (std::size_t i = 0; i < b0; ++i)
    for (std::size_t r = 0; r < b1; ++r) c.outputs.push_back(arm[i][r]);
  return c;
}

CircuitIR rgs_program(std::size_t b0, Strategy s) {
  if (b0 < 2) throw ValidationError("repeater graph state needs b0 >= 2");
  CircuitIR c = tree_program(b0, 1, s);
  c.protocol = "rgs";
  c.params.erase("b1");
  const QubitId anchor = c.outputs.front();
  std::vector<QubitId> cores(c.outputs.begin() + 1, c.outputs.begin() + 1 + b0);

  // Y measurement of the root: local complementation on its neighbourhood
  // (the cores) followed by deletion, up to a phase gate on every core.
  c.stage = Stage::Convert;
  const MeasId m = c.measure(anchor, Basis::Y);
  for (auto q : cores) c.vrz(q, kRgsPhaseSign);
  for (auto q : cores) c.cond(m, -1, q, Pauli::Z);
  c.stage = Stage::Generate;

  c.outputs.erase(c.outputs.begin());
  return c;
}

Graph target_graph(const CircuitIR &c) {
  auto get = [&](const char *key) -> std::size_t {
    auto it = c.params.find(key);
    if (it == c.params.end()) throw ValidationError(c.protocol + " circuit has no parameter " + key);
    return std::stoul(it->second);
  };
  if (c.protocol == "cluster") return build_cluster(get("k"), get("n"));
  if (c.protocol == "tree") {
    const std::size_t b1 = get("b1");
    return b1 ? build_tree({get("b0"), b1}) : build_tree({get("b0")});
  }
  if (c.protocol == "rgs") return build_rgs(get("b0"));
  throw ValidationError("no target graph for protocol '" + c.protocol + "'");
}

CircuitIR compile_cluster(std::size_t k, std::size_t n, Flavor f) { return lower(cluster_program(k, n), f); }

CircuitIR compile_tree(std::size_t b0, std::size_t b1, Flavor f, Strategy s, const TreeOptions &opt) {
  return lower(tree_program(b0, b1, s, opt), f);
}

CircuitIR compile_rgs(std::size_t b0, Flavor f, Strategy s) { return lower(rgs_program(b0, s), f); }

CircuitIR compile_shor_logical() {
  CircuitIR c;
  c.protocol = "shor";
  const QubitId aux = c.add_qubit(Role::Auxiliary);
  std::vector<QubitId> e(9);
  for (auto &q : e) q = c.add_qubit(Role::Emitter);

  // Logical |0> = (|000> + |111>)^{x3}: phase-code heads, then GHZ triples.
  c.stage = Stage::Prepare;
  c.h(aux);
  c.cnot(e[0], e[3]);
  c.cnot(e[0], e[6]);
  for (std::size_t b = 0; b < 9; b += 3) c.h(e[b]);
  for (std::size_t b = 0; b < 9; b += 3) {
    c.cnot(e[b], e[b + 1]);
    c.cnot(e[b], e[b + 2]);
  }

  // Controlled logical X (Z on every physical qubit), then emission.
  c.stage = Stage::Generate;
  for (auto q : e) c.cz(aux, q);
  std::vector<QubitId> photons;
  for (auto q : e) photons.push_back(c.emit(q));
  c.h(aux);

  c.outputs.push_back(aux);
  c.outputs.insert(c.outputs.end(), photons.begin(), photons.end());
  return c;
}

ShorLayout shor_layout(const CircuitIR &c) {
  ShorLayout l{};
  bool found = false;
  for (QubitId q = 0; q < c.qubit_count(); ++q) {
    switch (c.qubits()[q].role) {
      case Role::Auxiliary:
        l.aux = q;
        found = true;
        break;
      case Role::Emitter: l.emitters.push_back(q); break;
      case Role::Photon: l.photons.push_back(q); break;
      case Role::Anchor: break;
    }
  }
  if (!found || l.emitters.size() != 9 || l.photons.size() != 9)
    throw ValidationError("circuit does not have the Shor logical layout");
  return l;
}

double encoding_time(Encoding e, double tau_cnot, double tau_x, double tau_0) {
  if (!(tau_cnot > 0) || !(tau_x > 0) || !(tau_0 > 0)) throw ValidationError("encoding_time: durations must be > 0");
  switch (e) {
    case Encoding::Fock: return tau_cnot + tau_0;
    case Encoding::TimeBin: return 2 * tau_cnot + 2 * tau_0;
    case Encoding::FrequencyBin:
    case Encoding::TwoRail: return 2 * tau_cnot + tau_x + tau_0;
  }
  return 0.0;
}

Encoding encoding_from_string(const std::string &s) {
  if (s == "fock") return Encoding::Fock;
  if (s == "time_bin") return Encoding::TimeBin;
  if (s == "frequency_bin") return Encoding::FrequencyBin;
  if (s == "two_rail") return Encoding::TwoRail;
  throw ValidationError("unknown encoding: " + s);
}

}  // namespace gsforge
