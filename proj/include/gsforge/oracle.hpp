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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsforge/fidelity.hpp"
#include "gsforge/graph.hpp"
#include "gsforge/ir.hpp"
#include "gsforge/pauli.hpp"

namespace gsforge {

using Qubit2 = Eigen::Matrix2cd;
using QubitChannel = std::function<Qubit2(const Qubit2 &)>;

/// Amplitude damping (T1) and pure dephasing (T2) over a window tau:
///   rho00 += (1 - e^{-tau/T1}) rho11, rho11 *= e^{-tau/T1},
///   rho01 *= e^{-tau/T2}.
/// Requires T2 <= 2 T1.
Qubit2 idle_channel(const Qubit2 &rho, double tau, double t1, double t2);
QubitChannel idle_map(double tau, double t1, double t2);

/// Average fidelity over the six Pauli eigenstates (a 2-design, so this is
/// the Haar average).
double average_channel_fidelity(const QubitChannel &channel);

/// Probability of a uniformly random non-identity Pauli that gives average
/// fidelity f on dimension d: p = (1 - f)(d + 1)/d.
double depolarizing_rate(double f_avg, std::size_t d);

/// Dense density matrix; qubit 0 is the most significant bit of the index.
class DenseState {
 public:
  explicit DenseState(std::size_t n);  // |0...0>

  /// GSFORGE_DENSE_LIMIT if set, otherwise 10.
  static std::size_t limit();

  std::size_t qubits() const { return n_; }
  const Eigen::MatrixXcd &matrix() const { return rho_; }
  Eigen::MatrixXcd &matrix() { return rho_; }

  void apply_1q(const Qubit2 &u, std::size_t q);
  void apply_2q(const Eigen::Matrix4cd &u, std::size_t a, std::size_t b);  // a is the high bit
  void conjugate_pauli(const PauliString &p);
  void swap(std::size_t a, std::size_t b);

  /// With probability p, a uniformly random non-identity Pauli on `qs`.
  void depolarize(const std::vector<std::size_t> &qs, double p);
  void idle(std::size_t q, double tau, double t1, double t2);

  /// rho -> Pi rho Pi for the eigenvalue `value` of `basis` on q (unnormalised).
  void project(std::size_t q, Basis basis, int value);

  double trace() const;
  std::complex<double> expectation(const PauliString &p) const;  // Tr(rho P)

  /// Tr(rho Pi) for the stabilizer state of `generators` on `qubits`.
  double overlap(const std::vector<PauliString> &generators, const std::vector<std::size_t> &qubits) const;

 private:
  std::size_t n_;
  Eigen::MatrixXcd rho_;
  std::size_t bit(std::size_t q) const { return std::size_t{1} << (n_ - 1 - q); }
};

Qubit2 prim_matrix(Prim p);
Eigen::Matrix4cd two_qubit_matrix(TwoQubitKind k);  // control is the high bit

/// Per-operation noise derived from device parameters: depolarising after
/// each gate, a readout flip with probability 1 - F_m, the exact idle channel
/// (dense) or its Pauli twirl (Monte Carlo).
struct NoiseModel {
  double p_sq = 0.0;
  double p_cnot = 0.0, p_cr = 0.0, p_cz = 0.0;
  double p_flip = 0.0;
  double p_emit = 0.0;
  double tau = 0.0, t1 = 0.0, t2 = 0.0;

  static NoiseModel from(const DeviceParams &p);
  double two_qubit(TwoQubitKind k) const;
};

struct OracleMethod {
  enum class Kind { Dense, PauliMC };
  Kind kind = Kind::Dense;
  std::size_t trials = 0;
  std::uint64_t seed = 0;

  static OracleMethod dense() { return {Kind::Dense, 0, 0}; }
  static OracleMethod pauli_mc(std::size_t trials, std::uint64_t seed) { return {Kind::PauliMC, trials, seed}; }
};

struct BranchFidelity {
  std::vector<int> reported;  // reported outcomes in measurement order
  double probability;
  double fidelity;  // conditional on the branch
};

struct OracleResult {
  std::string method;  // "dense" | "pauli_mc"
  std::size_t trials = 0;
  double estimate = 0.0;
  double std_err = 0.0;
  std::optional<double> analytic;
  std::vector<BranchFidelity> branches;  // dense only
  double max_trace_error = 0.0;          // dense only

  std::string to_json() const;
};

/// Fidelity of the noisy output with the target graph state, averaged over
/// measurement branches (corrections applied physically in the dense case,
/// through the error frame in the Monte Carlo case). The target comes from
/// the circuit's protocol parameters; `analytic` is filled from the matching
/// closed form.
OracleResult noisy_state_fidelity(const CircuitIR &c, const DeviceParams &p, const OracleMethod &method);
OracleResult noisy_state_fidelity(const CircuitIR &c, const Graph &target, const DeviceParams &p,
                                  const OracleMethod &method);

}  // namespace gsforge
