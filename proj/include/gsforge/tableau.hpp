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
#include <optional>
#include <string>
#include <vector>

#include "gsforge/pauli.hpp"

namespace gsforge {

/// Generator list of a pure n-qubit stabilizer state.
///
/// The generators are kept as given (no implicit reduction); use
/// canonical_form() to compare states.
class StabilizerTableau {
 public:
  StabilizerTableau() = default;
  /// |0...0>, generators Z_0..Z_{n-1}.
  explicit StabilizerTableau(std::size_t n);
  StabilizerTableau(std::size_t n, std::vector<PauliString> generators);

  static StabilizerTableau from_strings(const std::vector<std::string> &rows);

  std::size_t qubits() const { return n_; }
  const std::vector<PauliString> &generators() const { return rows_; }
  std::vector<PauliString> &generators() { return rows_; }
  const PauliString &row(std::size_t i) const { return rows_[i]; }
  PauliString &row(std::size_t i) { return rows_[i]; }

  /// Appends a qubit in |0> (a new +Z generator).
  std::size_t add_qubit();

  /// Checks commutation, independence and generator count.
  bool is_valid_state() const;
  void validate() const;

  /// If +/-P is in the stabilizer group, returns the sign (+1/-1) of the
  /// member; nullopt when P is not in the group up to sign.
  std::optional<int> membership(const PauliString &p) const;

  std::vector<std::string> strings() const;

  friend bool operator==(const StabilizerTableau &, const StabilizerTableau &) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> rows_;
};

/// Reduced row-echelon form over GF(2).
///
/// Pivot columns are searched in the order x_0..x_{n-1}, z_0..z_{n-1}
/// (X block first). Every pivot column is cleared in all other rows, rows are
/// kept in pivot order, and signs are carried through each row product, so
/// the result is a function of the stabilizer group alone. Throws
/// ValidationError on dependent or anticommuting rows.
StabilizerTableau canonical_form(const StabilizerTableau &t);

/// Stabilizer subgroup supported only on `keep` (in that qubit order), found
/// by eliminating the other qubits' columns first. The result has fewer than
/// keep.size() generators when `keep` is entangled with the rest.
StabilizerTableau restrict_to(const StabilizerTableau &t, const std::vector<std::size_t> &keep);

}  // namespace gsforge
