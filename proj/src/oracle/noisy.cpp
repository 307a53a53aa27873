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
#include <cmath>
#include <exception>
#include <map>
#include <random>
#include <thread>
#include <type_traits>

#include <nlohmann/json.hpp>

#include "gsforge/clifford.hpp"
#include "gsforge/errors.hpp"
#include "gsforge/oracle.hpp"
#include "gsforge/protocols.hpp"

namespace gsforge {

NoiseModel NoiseModel::from(const DeviceParams &p) {
  p.validate();
  NoiseModel m;
  m.p_sq = depolarizing_rate(p.f_sq, 2);
  if (p.f_cnot) m.p_cnot = depolarizing_rate(*p.f_cnot, 4);
  if (p.f_cr) m.p_cr = depolarizing_rate(*p.f_cr, 4);
  if (p.f_cz) m.p_cz = depolarizing_rate(*p.f_cz, 4);
  m.p_flip = 1.0 - p.f_m;
  if (p.f_emit) m.p_emit = depolarizing_rate(*p.f_emit, 2);
  m.tau = p.tau;
  m.t1 = p.t1;
  m.t2 = p.t2;
  return m;
}

double NoiseModel::two_qubit(TwoQubitKind k) const {
  switch (k) {
    case TwoQubitKind::CNOT: return p_cnot;
    case TwoQubitKind::CR: return p_cr;
    case TwoQubitKind::CZ: return p_cz;
  }
  return 0.0;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_two_qubit_params(const CircuitIR &c, const DeviceParams &p) {
  for (const auto &ins : c.instructions())
    if (const auto *g = std::get_if<TwoQubitGate>(&ins.op)) (void)p.two_qubit(g->kind);
}

// ---------------------------------------------------------------- dense

struct DenseRunner {
  const CircuitIR &c;
  const NoiseModel &nm;
  std::vector<PauliString> generators;
  OracleResult &out;
  std::vector<int> reported;  // by measurement id, 0 = not yet
  std::vector<int> sequence;

  void finish(const DenseState &st) {
    const double prob = st.trace();
    if (prob <= 0) return;
    const double f = st.overlap(generators, c.outputs);
    out.estimate += f;
    out.branches.push_back({sequence, prob, f / prob});
  }

  void run(DenseState st, std::size_t idx) {
    const auto &body = c.instructions();
    const double weight = st.trace();  // channels and unitaries keep it
    for (; idx < body.size(); ++idx) {
      bool branched = false;
      std::visit(overloaded{
                     [&](const SqGate &g) {
                       for (Prim p : g.parts) st.apply_1q(prim_matrix(p), g.qubit);
                       st.depolarize({g.qubit}, nm.p_sq);
                     },
                     [&](const TwoQubitGate &g) {
                       st.apply_2q(two_qubit_matrix(g.kind), g.control, g.target);
                       st.depolarize({g.control, g.target}, nm.two_qubit(g.kind));
                     },
                     [&](const Emit &e) {
                       st.swap(e.emitter, e.photon);
                       st.depolarize({e.photon}, nm.p_emit);
                     },
                     [&](const Idle &w) {
                       if (nm.tau <= 0) return;
                       for (QubitId q : w.qubits) st.idle(q, w.windows * nm.tau, nm.t1, nm.t2);
                     },
                     [&](const CondPauli &cp) {
                       if (reported.at(cp.id) == cp.trigger) st.conjugate_pauli(PauliString::single(c.qubit_count(), cp.target, cp.pauli));
                     },
                     [&](const VirtualRz &v) { st.apply_1q(prim_matrix(v.sign > 0 ? Prim::RZP : Prim::RZM), v.qubit); },
                     [&](const Measure &m) {
                       // Reported value r: true outcome r kept with 1 - flip, the
                       // other outcome misreported with probability flip.
                       for (int r : {+1, -1}) {
                         DenseState keep = st, miss = st;
                         keep.project(m.qubit, m.basis, r);
                         miss.project(m.qubit, m.basis, -r);
                         keep.matrix() = (1 - nm.p_flip) * keep.matrix() + nm.p_flip * miss.matrix();
                         if (keep.trace() < 1e-14) continue;
                         reported.at(m.id) = r;
                         sequence.push_back(r);
                         run(std::move(keep), idx + 1);
                         sequence.pop_back();
                       }
                       reported.at(m.id) = 0;
                       branched = true;
                     },
                 },
                 body[idx].op);
      if (branched) return;
      out.max_trace_error = std::max(out.max_trace_error, std::abs(st.trace() - weight));
    }
    finish(st);
  }
};

OracleResult run_dense(const CircuitIR &c, const std::vector<PauliString> &gens, const NoiseModel &nm) {
  OracleResult r;
  r.method = "dense";
  DenseState st(c.qubit_count());
  DenseRunner runner{c, nm, gens, r, std::vector<int>(c.measurement_count(), 0), {}};
  runner.run(std::move(st), 0);
  double total = 0;
  for (const auto &b : r.branches) total += b.probability;
  r.max_trace_error = std::max(r.max_trace_error, std::abs(total - 1.0));
  r.trials = r.branches.size();
  return r;
}

// ---------------------------------------------------------- Pauli frame

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct TwirlTable {
  double px = 0, py = 0, pz = 0;
};

// Pauli twirl of the idle map over duration t.
TwirlTable twirl(double t, const NoiseModel &nm) {
  if (t <= 0 || nm.t1 <= 0) return {};
  const double g1 = std::exp(-t / nm.t1), g2 = std::exp(-t / nm.t2);
  return {(1 - g1) / 4, (1 - g1) / 4, (1 + g1 - 2 * g2) / 4};
}

class FrameTrial {
 public:
  FrameTrial(const CircuitIR &c, const NoiseModel &nm, std::uint64_t seed)
      : c_(c), nm_(nm), rng_(seed), err_(c.qubit_count()), flipped_(c.measurement_count(), 0) {}

  PauliString run() {
    for (const auto &ins : c_.instructions()) {
      std::visit(overloaded{
                     [&](const SqGate &g) {
                       conjugate(err_, g.parts, g.qubit);
                       depolarize({g.qubit}, nm_.p_sq);
                     },
                     [&](const TwoQubitGate &g) {
                       conjugate(err_, g.kind, g.control, g.target);
                       depolarize({g.control, g.target}, nm_.two_qubit(g.kind));
                     },
                     [&](const Emit &e) {
                       conjugate_swap(err_, e.emitter, e.photon);
                       depolarize({e.photon}, nm_.p_emit);
                     },
                     [&](const Idle &w) {
                       const TwirlTable t = twirl(w.windows * nm_.tau, nm_);
                       for (QubitId q : w.qubits) {
                         const double u = uniform();
                         if (u < t.px) toggle(q, Pauli::X);
                         else if (u < t.px + t.py) toggle(q, Pauli::Y);
                         else if (u < t.px + t.py + t.pz) toggle(q, Pauli::Z);
                       }
                     },
                     [&](const Measure &m) {
                       // Pi_m E = E Pi_{-m} when E anticommutes with the basis: the
                       // run equals the other ideal branch with E still applied, so
                       // E itself is unchanged and only the readout flips.
                       const Pauli b = m.basis == Basis::X ? Pauli::X : m.basis == Basis::Y ? Pauli::Y : Pauli::Z;
                       const bool anti = !err_.commutes(PauliString::single(err_.size(), m.qubit, b));
                       const bool misread = nm_.p_flip > 0 && uniform() < nm_.p_flip;
                       flipped_[m.id] = anti != misread;
                     },
                     [&](const CondPauli &cp) {
                       if (flipped_[cp.id]) toggle(cp.target, cp.pauli);
                     },
                     [&](const VirtualRz &v) { conjugate(err_, v.sign > 0 ? Prim::RZP : Prim::RZM, v.qubit); },
                 },
                 ins.op);
    }
    return err_;
  }

 private:
  const CircuitIR &c_;
  const NoiseModel &nm_;
  std::mt19937_64 rng_;
  PauliString err_;
  std::vector<char> flipped_;

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  void toggle(QubitId q, Pauli p) {
    const Pauli cur = err_.at(q);
    err_.set(q, Pauli(std::uint8_t(cur) ^ std::uint8_t(p)));
  }

  void depolarize(std::initializer_list<QubitId> qs, double p) {
    if (p <= 0 || uniform() >= p) return;
    const std::size_t count = (std::size_t{1} << (2 * qs.size())) - 1;
    const std::size_t code = 1 + std::uniform_int_distribution<std::size_t>(0, count - 1)(rng_);
    std::size_t k = 0;
    for (QubitId q : qs) toggle(q, Pauli((code >> (2 * k++)) & 3));
  }
};

OracleResult run_pauli_mc(const CircuitIR &c, const std::vector<PauliString> &gens, const NoiseModel &nm,
                          std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw ValidationError("pauli_mc needs at least one trial");
  // Generators embedded on the circuit's qubits.
  std::vector<PauliString> embedded;
  for (const auto &g : gens) {
    PauliString e(c.qubit_count());
    for (std::size_t k = 0; k < c.outputs.size(); ++k) e.set(c.outputs[k], g.at(k));
    embedded.push_back(e);
  }
  auto success = [&](std::size_t t) {
    FrameTrial trial(c, nm, splitmix(seed ^ splitmix(t)));
    PauliString err = trial.run();
    // Matter left in a product state does not touch the outputs.
    PauliString on_outputs(c.qubit_count());
    for (QubitId q : c.outputs) on_outputs.set(q, err.at(q));
    for (const auto &g : embedded)
      if (!on_outputs.commutes(g)) return false;
    return true;
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), trials / 1000));
  std::vector<std::size_t> hits(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < trials; t += workers) hits[w] += success(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto &th : pool) th.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);

  std::size_t total = 0;
  for (auto h : hits) total += h;
  OracleResult r;
  r.method = "pauli_mc";
  r.trials = trials;
  r.estimate = double(total) / double(trials);
  r.std_err = std::sqrt(std::max(r.estimate * (1 - r.estimate), 0.0) / double(trials));
  return r;
}

std::optional<double> analytic_for(const CircuitIR &c, const DeviceParams &p) {
  auto get = [&](const char *key) { return std::stoul(c.params.at(key)); };
  try {
    if (c.protocol == "cluster") return cluster_fidelity(get("k"), get("n"), p).total;
    const auto s = c.params.find("strategy");
    const bool parallel = s != c.params.end() && s->second == "parallel";
    if (c.protocol == "tree" && parallel && !c.params.count("aux_basis"))
      return tree_fidelity(get("b0"), get("b1"), p).total;
    if (c.protocol == "rgs" && parallel) return rgs_fidelity(get("b0"), p).total;
    // No closed form: fall back to the product over the circuit's census.
    return census_consistency(c, p).total;
  } catch (const std::exception &) {
    return std::nullopt;
  }
}

}  // namespace

OracleResult noisy_state_fidelity(const CircuitIR &c, const DeviceParams &p, const OracleMethod &method) {
  OracleResult r = noisy_state_fidelity(c, target_graph(c), p, method);
  r.analytic = analytic_for(c, p);
  return r;
}

OracleResult noisy_state_fidelity(const CircuitIR &c, const Graph &target, const DeviceParams &p,
                                  const OracleMethod &method) {
  c.validate();
  if (target.vertex_count() != c.outputs.size())
    throw ValidationError("target graph has " + std::to_string(target.vertex_count()) + " vertices but the circuit has " +
                          std::to_string(c.outputs.size()) + " outputs");
  for (const auto &ins : c.instructions())
    if (const auto *m = std::get_if<Measure>(&ins.op); m && m->basis != Basis::Z)
      throw ValidationError("oracle expects a lowered circuit (Z-basis measurements only)");
  check_two_qubit_params(c, p);
  const NoiseModel nm = NoiseModel::from(p);
  const auto gens = stabilizers_of(target).generators();
  if (method.kind == OracleMethod::Kind::Dense) return run_dense(c, gens, nm);
  return run_pauli_mc(c, gens, nm, method.trials, method.seed);
}

std::string OracleResult::to_json() const {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["trials"] = trials;
  j["estimate"] = estimate;
  j["std_err"] = std_err;
  j["analytic"] = analytic ? nlohmann::ordered_json(*analytic) : nlohmann::ordered_json(nullptr);
  j["delta"] = analytic ? nlohmann::ordered_json(estimate - *analytic) : nlohmann::ordered_json(nullptr);
  if (!branches.empty()) {
    double worst = 1.0;
    auto arr = nlohmann::ordered_json::array();
    for (const auto &b : branches) {
      worst = std::min(worst, b.fidelity);
      arr.push_back({{"reported", b.reported}, {"probability", b.probability}, {"fidelity", b.fidelity}});
    }
    j["worst_branch"] = worst;
    j["branches"] = arr;
  }
  return j.dump();
}

}  // namespace gsforge
