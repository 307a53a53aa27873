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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gsforge {

enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Hermitian Pauli operator on n qubits with a +/- sign.
///
/// Bits follow the symplectic convention: (x, z) = (1, 0) is X, (0, 1) is Z
/// and (1, 1) is Y (not XZ).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : x_(n, 0), z_(n, 0) {}

  /// Parses strings such as "+XZI", "-YY" or "ZX" (sign optional).
  static PauliString parse(std::string_view text);
  static PauliString single(std::size_t n, std::size_t q, Pauli p);

  std::size_t size() const { return x_.size(); }

  bool x(std::size_t q) const { return x_[q] != 0; }
  bool z(std::size_t q) const { return z_[q] != 0; }
  void set_x(std::size_t q, bool v) { x_[q] = v ? 1 : 0; }
  void set_z(std::size_t q, bool v) { z_[q] = v ? 1 : 0; }

  Pauli at(std::size_t q) const;
  void set(std::size_t q, Pauli p);

  bool negative() const { return negative_; }
  void set_negative(bool v) { negative_ = v; }
  void flip_sign() { negative_ = !negative_; }

  bool is_identity() const;
  std::size_t weight() const;
  bool commutes(const PauliString &other) const;

  /// this <- this * other. Both operands must commute so that the product is
  /// Hermitian; throws ProtocolError otherwise.
  void multiply_by(const PauliString &other);

  /// Appends one identity qubit.
  void grow(std::size_t extra = 1);
  PauliString restricted(const std::vector<std::size_t> &qubits) const;

  std::string str() const;

  friend bool operator==(const PauliString &, const PauliString &) = default;

  const std::vector<std::uint8_t> &xs() const { return x_; }
  const std::vector<std::uint8_t> &zs() const { return z_; }

 private:
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> z_;
  bool negative_ = false;
};

/// Power of i picked up by single-qubit Pauli product (x1,z1)*(x2,z2),
/// returned in {-1, 0, 1}.
int pauli_product_phase(bool x1, bool z1, bool x2, bool z2);

}  // namespace gsforge
