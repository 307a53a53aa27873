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

#include "gsforge/tableau.hpp"

#include <utility>

#include "gsforge/errors.hpp"

namespace gsforge {

namespace {

// A column of the symplectic matrix: x or z bit of one qubit.
struct Column {
  bool z_block;
  std::size_t qubit;
};

bool bit(const PauliString &p, Column c) { return c.z_block ? p.z(c.qubit) : p.x(c.qubit); }

struct Reduced {
  std::vector<PauliString> rows;      // pivot rows first, in pivot order
  std::vector<std::size_t> pivot_at;  // index into `order` of each pivot row
};

// Full Gauss-Jordan elimination over the given column priority.
Reduced eliminate(std::vector<PauliString> rows, const std::vector<Column> &order) {
  Reduced out;
  std::size_t next = 0;
  for (std::size_t ci = 0; ci < order.size() && next < rows.size(); ++ci) {
    const Column c = order[ci];
    std::size_t found = next;
    while (found < rows.size() && !bit(rows[found], c)) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[next], rows[found]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && bit(rows[r], c)) rows[r].multiply_by(rows[next]);
    }
    out.pivot_at.push_back(ci);
    ++next;
  }
  out.rows = std::move(rows);
  return out;
}

std::vector<Column> x_first_order(std::size_t n) {
  std::vector<Column> order;
  order.reserve(2 * n);
  for (std::size_t q = 0; q < n; ++q) order.push_back({false, q});
  for (std::size_t q = 0; q < n; ++q) order.push_back({true, q});
  return order;
}

bool pairwise_commute(const std::vector<PauliString> &rows) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (!rows[i].commutes(rows[j])) return false;
  return true;
}

}  // namespace

StabilizerTableau::StabilizerTableau(std::size_t n) : n_(n) {
  rows_.reserve(n);
  for (std::size_t q = 0; q < n; ++q) rows_.push_back(PauliString::single(n, q, Pauli::Z));
}

StabilizerTableau::StabilizerTableau(std::size_t n, std::vector<PauliString> generators)
    : n_(n), rows_(std::move(generators)) {
  for (const auto &r : rows_)
    if (r.size() != n_) throw ValidationError("generator length does not match qubit count");
}

StabilizerTableau StabilizerTableau::from_strings(const std::vector<std::string> &rows) {
  std::vector<PauliString> gens;
  for (const auto &s : rows) gens.push_back(PauliString::parse(s));
  const std::size_t n = gens.empty() ? 0 : gens.front().size();
  return StabilizerTableau(n, std::move(gens));
}

std::size_t StabilizerTableau::add_qubit() {
  for (auto &r : rows_) r.grow();
  ++n_;
  rows_.push_back(PauliString::single(n_, n_ - 1, Pauli::Z));
  return n_ - 1;
}

bool StabilizerTableau::is_valid_state() const {
  if (rows_.size() != n_) return false;
  if (!pairwise_commute(rows_)) return false;
  auto red = eliminate(rows_, x_first_order(n_));
  return red.pivot_at.size() == n_;
}

void StabilizerTableau::validate() const {
  if (rows_.size() != n_) throw ValidationError("a pure state needs exactly n generators");
  if (!pairwise_commute(rows_)) throw ValidationError("generators do not commute");
  auto red = eliminate(rows_, x_first_order(n_));
  if (red.pivot_at.size() != n_) throw ValidationError("generators are linearly dependent");
}

std::optional<int> StabilizerTableau::membership(const PauliString &p) const {
  for (const auto &r : rows_)
    if (!r.commutes(p)) return std::nullopt;
  const auto order = x_first_order(n_);
  auto red = eliminate(rows_, order);
  PauliString q = p;
  q.set_negative(false);
  for (std::size_t i = 0; i < red.pivot_at.size(); ++i) {
    if (bit(q, order[red.pivot_at[i]])) q.multiply_by(red.rows[i]);
  }
  if (!q.is_identity()) return std::nullopt;
  return q.negative() ? -1 : 1;
}

std::vector<std::string> StabilizerTableau::strings() const {
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const auto &r : rows_) out.push_back(r.str());
  return out;
}

StabilizerTableau canonical_form(const StabilizerTableau &t) {
  if (!pairwise_commute(t.generators())) throw ValidationError("generators do not commute");
  auto red = eliminate(t.generators(), x_first_order(t.qubits()));
  if (red.pivot_at.size() != t.generators().size())
    throw ValidationError("generators are linearly dependent");
  return StabilizerTableau(t.qubits(), std::move(red.rows));
}

StabilizerTableau restrict_to(const StabilizerTableau &t, const std::vector<std::size_t> &keep) {
  const std::size_t n = t.qubits();
  std::vector<bool> kept(n, false);
  for (auto q : keep) {
    if (q >= n) throw ValidationError("restrict_to: qubit out of range");
    kept[q] = true;
  }
  std::vector<Column> order;
  for (std::size_t q = 0; q < n; ++q)
    if (!kept[q]) order.push_back({false, q}), order.push_back({true, q});
  const std::size_t boundary = order.size();
  for (auto q : keep) order.push_back({false, q}), order.push_back({true, q});

  auto red = eliminate(t.generators(), order);
  std::vector<PauliString> rows;
  for (std::size_t i = 0; i < red.pivot_at.size(); ++i)
    if (red.pivot_at[i] >= boundary) rows.push_back(red.rows[i].restricted(keep));
  return StabilizerTableau(keep.size(), std::move(rows));
}

}  // namespace gsforge
