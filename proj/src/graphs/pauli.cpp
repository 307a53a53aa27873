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

#include "gsforge/pauli.hpp"

#include "gsforge/errors.hpp"

namespace gsforge {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case '_': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ValidationError(std::string("not a Pauli: ") + c);
  }
}

PauliString PauliString::parse(std::string_view text) {
  bool neg = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) p.set(q, pauli_from_char(text[q]));
  p.negative_ = neg;
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t q, Pauli p) {
  PauliString s(n);
  s.set(q, p);
  return s;
}

Pauli PauliString::at(std::size_t q) const {
  return static_cast<Pauli>((x_[q] ? 1 : 0) | (z_[q] ? 2 : 0));
}

void PauliString::set(std::size_t q, Pauli p) {
  auto v = static_cast<std::uint8_t>(p);
  x_[q] = v & 1;
  z_[q] = (v >> 1) & 1;
}

bool PauliString::is_identity() const {
  for (std::size_t q = 0; q < size(); ++q)
    if (x_[q] || z_[q]) return false;
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t q = 0; q < size(); ++q) w += (x_[q] | z_[q]) ? 1 : 0;
  return w;
}

bool PauliString::commutes(const PauliString &other) const {
  unsigned acc = 0;
  for (std::size_t q = 0; q < size(); ++q)
    acc ^= (x_[q] & other.z_[q]) ^ (z_[q] & other.x_[q]);
  return acc == 0;
}

int pauli_product_phase(bool x1, bool z1, bool x2, bool z2) {
  // Aaronson-Gottesman g function.
  if (!x1 && !z1) return 0;
  if (x1 && z1) return static_cast<int>(z2) - static_cast<int>(x2);
  if (x1) return static_cast<int>(z2) * (2 * static_cast<int>(x2) - 1);
  return static_cast<int>(x2) * (1 - 2 * static_cast<int>(z2));
}

void PauliString::multiply_by(const PauliString &other) {
  int phase = (negative_ ? 2 : 0) + (other.negative_ ? 2 : 0);
  for (std::size_t q = 0; q < size(); ++q) {
    phase += pauli_product_phase(x_[q], z_[q], other.x_[q], other.z_[q]);
    x_[q] ^= other.x_[q];
    z_[q] ^= other.z_[q];
  }
  phase = ((phase % 4) + 4) % 4;
  if (phase % 2 != 0) throw ProtocolError("product of anticommuting Paulis is not Hermitian");
  negative_ = phase == 2;
}

void PauliString::grow(std::size_t extra) {
  x_.resize(x_.size() + extra, 0);
  z_.resize(z_.size() + extra, 0);
}

PauliString PauliString::restricted(const std::vector<std::size_t> &qubits) const {
  PauliString r(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) r.set(i, at(qubits[i]));
  r.negative_ = negative_;
  return r;
}

std::string PauliString::str() const {
  std::string s(1, negative_ ? '-' : '+');
  for (std::size_t q = 0; q < size(); ++q) s += pauli_char(at(q));
  return s;
}

}  // namespace gsforge
