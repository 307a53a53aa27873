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

#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "gsforge/errors.hpp"
#include "gsforge/oracle.hpp"

namespace gsforge {

namespace {

using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

void check_idle(double tau, double t1, double t2) {
  if (!(t1 > 0) || !(t2 > 0)) throw ValidationError("idle channel needs T1 > 0 and T2 > 0");
  if (tau < 0) throw ValidationError("idle channel needs tau >= 0");
  if (t2 > 2 * t1) throw ValidationError("idle channel is unphysical for T2 > 2 T1");
}

Qubit2 rotation(Pauli a, double theta) {
  Qubit2 p;
  if (a == Pauli::X) p << 0, 1, 1, 0;
  else p << 1, 0, 0, -1;
  return std::cos(theta / 2) * Qubit2::Identity() - cd(0, 1) * std::sin(theta / 2) * p;
}

}  // namespace

Qubit2 idle_channel(const Qubit2 &rho, double tau, double t1, double t2) {
  check_idle(tau, t1, t2);
  const double g1 = std::exp(-tau / t1);
  const double g2 = std::exp(-tau / t2);
  Qubit2 out;
  out(0, 0) = rho(0, 0) + (1 - g1) * rho(1, 1);
  out(1, 1) = g1 * rho(1, 1);
  out(0, 1) = g2 * rho(0, 1);
  out(1, 0) = g2 * rho(1, 0);
  return out;
}

QubitChannel idle_map(double tau, double t1, double t2) {
  check_idle(tau, t1, t2);
  return [=](const Qubit2 &rho) { return idle_channel(rho, tau, t1, t2); };
}

double average_channel_fidelity(const QubitChannel &channel) {
  const double s = 1 / std::sqrt(2.0);
  const Eigen::Vector2cd states[6] = {{1, 0}, {0, 1}, {s, s}, {s, -s}, {s, cd(0, s)}, {s, cd(0, -s)}};
  double sum = 0;
  for (const auto &psi : states) {
    const Qubit2 out = channel(psi * psi.adjoint());
    sum += (psi.adjoint() * out * psi)(0, 0).real();
  }
  return sum / 6;
}

double depolarizing_rate(double f_avg, std::size_t d) {
  if (d != 2 && d != 4) throw ValidationError("depolarizing_rate: d must be 2 or 4");
  const double lo = double(d) / double(d + 1);
  if (!(f_avg > lo && f_avg <= 1.0))
    throw ValidationError("depolarizing_rate: average fidelity must lie in (" + std::to_string(lo) + ", 1]");
  return (1 - f_avg) * double(d + 1) / double(d);
}

Qubit2 prim_matrix(Prim p) {
  Qubit2 m;
  switch (p) {
    case Prim::H: m << 1, 1, 1, -1; return m / std::sqrt(2.0);
    case Prim::X: m << 0, 1, 1, 0; return m;
    case Prim::Z: m << 1, 0, 0, -1; return m;
    case Prim::RXP: return rotation(Pauli::X, kPi / 2);
    case Prim::RXM: return rotation(Pauli::X, -kPi / 2);
    case Prim::RZP: return rotation(Pauli::Z, kPi / 2);
    case Prim::RZM: return rotation(Pauli::Z, -kPi / 2);
  }
  throw ValidationError("unknown primitive");
}

Eigen::Matrix4cd two_qubit_matrix(TwoQubitKind k) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  switch (k) {
    case TwoQubitKind::CNOT:
      m(0, 0) = m(1, 1) = 1;
      m(2, 3) = m(3, 2) = 1;
      return m;
    case TwoQubitKind::CZ:
      m(0, 0) = m(1, 1) = m(2, 2) = 1;
      m(3, 3) = -1;
      return m;
    case TwoQubitKind::CR: {
      // exp(i pi/4 Z (x) X) = (I + i Z(x)X) / sqrt(2)
      const double s = 1 / std::sqrt(2.0);
      Eigen::Matrix4cd zx = Eigen::Matrix4cd::Zero();
      zx(0, 1) = zx(1, 0) = 1;
      zx(2, 3) = zx(3, 2) = -1;
      return s * (Eigen::Matrix4cd::Identity() + cd(0, 1) * zx);
    }
  }
  throw ValidationError("unknown two-qubit gate");
}

DenseState::DenseState(std::size_t n) : n_(n) {
  if (n > limit())
    throw ValidationError("dense oracle is limited to " + std::to_string(limit()) +
                          " qubits (GSFORGE_DENSE_LIMIT); circuit has " + std::to_string(n));
  const std::size_t d = std::size_t{1} << n;
  rho_ = Eigen::MatrixXcd::Zero(d, d);
  rho_(0, 0) = 1;
}

std::size_t DenseState::limit() {
  if (const char *env = std::getenv("GSFORGE_DENSE_LIMIT")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 14)
      throw ValidationError("GSFORGE_DENSE_LIMIT must be an integer in [1, 14]");
    return std::size_t(v);
  }
  return 10;
}

void DenseState::apply_1q(const Qubit2 &u, std::size_t q) {
  const std::size_t d = rho_.rows(), b = bit(q);
  // Left multiply (rows), then right multiply by u^dagger (columns).
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      if (i & b) continue;
      const cd a0 = rho_(i, j), a1 = rho_(i | b, j);
      rho_(i, j) = u(0, 0) * a0 + u(0, 1) * a1;
      rho_(i | b, j) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  const Qubit2 ud = u.adjoint();
  for (std::size_t j = 0; j < d; ++j) {
    if (j & b) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const cd a0 = rho_(i, j), a1 = rho_(i, j | b);
      rho_(i, j) = a0 * ud(0, 0) + a1 * ud(1, 0);
      rho_(i, j | b) = a0 * ud(0, 1) + a1 * ud(1, 1);
    }
  }
}

void DenseState::apply_2q(const Eigen::Matrix4cd &u, std::size_t a, std::size_t bq) {
  if (a == bq) throw ValidationError("two-qubit gate on a single qubit");
  const std::size_t d = rho_.rows(), ba = bit(a), bb = bit(bq);
  const std::size_t off[4] = {0, bb, ba, ba | bb};
  const Eigen::Matrix4cd ud = u.adjoint();
  Eigen::Vector4cd v;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      if (i & (ba | bb)) continue;
      for (int k = 0; k < 4; ++k) v[k] = rho_(i | off[k], j);
      const Eigen::Vector4cd w = u * v;
      for (int k = 0; k < 4; ++k) rho_(i | off[k], j) = w[k];
    }
  Eigen::RowVector4cd r;
  for (std::size_t j = 0; j < d; ++j) {
    if (j & (ba | bb)) continue;
    for (std::size_t i = 0; i < d; ++i) {
      for (int k = 0; k < 4; ++k) r[k] = rho_(i, j | off[k]);
      const Eigen::RowVector4cd w = r * ud;
      for (int k = 0; k < 4; ++k) rho_(i, j | off[k]) = w[k];
    }
  }
}

namespace {

struct Masks {
  std::size_t x = 0, z = 0;
};

Masks masks_of(const PauliString &p, std::size_t n) {
  Masks m;
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t b = std::size_t{1} << (n - 1 - q);
    if (p.x(q)) m.x |= b;
    if (p.z(q)) m.z |= b;
  }
  return m;
}

}  // namespace

void DenseState::conjugate_pauli(const PauliString &p) {
  if (p.size() != n_) throw ValidationError("Pauli size does not match the dense state");
  const Masks m = masks_of(p, n_);
  const std::size_t d = rho_.rows();
  // (P rho P)(i,j) = s(i^x) s(j^x) rho(i^x, j^x), s(k) = (-1)^{|k & z|}.
  Eigen::MatrixXcd out(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t jj = j ^ m.x;
    const int sj = std::popcount(jj & m.z) & 1;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t ii = i ^ m.x;
      const int si = std::popcount(ii & m.z) & 1;
      out(i, j) = (si ^ sj) ? -rho_(ii, jj) : rho_(ii, jj);
    }
  }
  rho_ = std::move(out);
}

void DenseState::swap(std::size_t a, std::size_t b) {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 0) = s(3, 3) = 1;
  s(1, 2) = s(2, 1) = 1;
  apply_2q(s, a, b);
}

void DenseState::depolarize(const std::vector<std::size_t> &qs, double p) {
  if (p == 0.0) return;
  if (p < 0 || p > 1) throw ValidationError("depolarizing probability outside [0, 1]");
  const std::size_t m = qs.size();
  const std::size_t count = (std::size_t{1} << (2 * m)) - 1;
  Eigen::MatrixXcd acc = (1 - p) * rho_;
  const Eigen::MatrixXcd original = rho_;
  for (std::size_t code = 1; code <= count; ++code) {
    PauliString pauli(n_);
    for (std::size_t k = 0; k < m; ++k) pauli.set(qs[k], Pauli((code >> (2 * k)) & 3));
    rho_ = original;
    conjugate_pauli(pauli);
    acc += (p / double(count)) * rho_;
  }
  rho_ = std::move(acc);
}

void DenseState::idle(std::size_t q, double tau, double t1, double t2) {
  check_idle(tau, t1, t2);
  const double g1 = std::exp(-tau / t1), g2 = std::exp(-tau / t2);
  const std::size_t d = rho_.rows(), b = bit(q);
  // The single-qubit map acts blockwise on the (row bit, column bit) of q.
  for (std::size_t j = 0; j < d; ++j) {
    if (j & b) continue;
    for (std::size_t i = 0; i < d; ++i) {
      if (i & b) continue;
      const cd r11 = rho_(i | b, j | b);
      rho_(i, j) += (1 - g1) * r11;
      rho_(i | b, j | b) = g1 * r11;
      rho_(i, j | b) *= g2;
      rho_(i | b, j) *= g2;
    }
  }
}

void DenseState::project(std::size_t q, Basis basis, int value) {
  if (value != 1 && value != -1) throw ValidationError("measurement value must be +1 or -1");
  // Rotate the basis onto Z, project, rotate back.
  Qubit2 to_z = Qubit2::Identity();
  if (basis == Basis::X) to_z = prim_matrix(Prim::H);
  else if (basis == Basis::Y) to_z = prim_matrix(Prim::RXP);
  if (basis != Basis::Z) apply_1q(to_z, q);
  const std::size_t d = rho_.rows(), b = bit(q);
  const std::size_t keep = value == 1 ? 0 : b;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i)
      if ((i & b) != keep || (j & b) != keep) rho_(i, j) = 0;
  if (basis != Basis::Z) apply_1q(to_z.adjoint(), q);
}

double DenseState::trace() const { return rho_.trace().real(); }

std::complex<double> DenseState::expectation(const PauliString &p) const {
  if (p.size() != n_) throw ValidationError("Pauli size does not match the dense state");
  const Masks m = masks_of(p, n_);
  std::size_t ny = 0;
  for (std::size_t q = 0; q < n_; ++q) ny += p.x(q) && p.z(q);
  static const cd ipow[4] = {1, cd(0, 1), -1, cd(0, -1)};
  // P|k> = i^{#Y} (-1)^{|k & z|} |k ^ x>, so Tr(rho P) = sum_k rho(k, k^x) w(k).
  cd sum = 0;
  const std::size_t d = rho_.rows();
  for (std::size_t k = 0; k < d; ++k) {
    const cd v = rho_(k, k ^ m.x);
    sum += (std::popcount(k & m.z) & 1) ? -v : v;
  }
  sum *= ipow[ny % 4];
  return p.negative() ? -sum : sum;
}

double DenseState::overlap(const std::vector<PauliString> &generators, const std::vector<std::size_t> &qubits) const {
  // Pi = prod (I + g)/2 = 2^-r sum over the group; walk it in Gray-code order.
  const std::size_t r = generators.size();
  std::vector<PauliString> embedded;
  for (const auto &g : generators) {
    PauliString e(n_);
    for (std::size_t k = 0; k < qubits.size(); ++k) e.set(qubits[k], g.at(k));
    e.set_negative(g.negative());
    embedded.push_back(e);
  }
  PauliString element(n_);
  double sum = trace();
  for (std::size_t i = 1; i < (std::size_t{1} << r); ++i) {
    const std::size_t flip = std::countr_zero(i);
    element.multiply_by(embedded[flip]);
    sum += expectation(element).real();
  }
  return sum / double(std::size_t{1} << r);
}

}  // namespace gsforge
