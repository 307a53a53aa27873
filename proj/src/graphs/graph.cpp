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

#include "gsforge/graph.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "gsforge/errors.hpp"

namespace gsforge {

Graph::Graph(std::size_t n, const std::vector<Edge> &edges) : n_(n), labels_(n) {
  for (const auto &[u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(std::size_t v) const {
  if (v >= n_) throw ValidationError("vertex " + std::to_string(v) + " out of range");
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw ValidationError("self-loops are not allowed");
  if (!edges_.insert({std::min(u, v), std::max(u, v)}).second)
    throw ValidationError("duplicate edge");
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
  edges_.erase({std::min(u, v), std::max(u, v)});
}

void Graph::toggle_edge(std::size_t u, std::size_t v) {
  if (has_edge(u, v))
    remove_edge(u, v);
  else
    add_edge(u, v);
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  return edges_.count({std::min(u, v), std::max(u, v)}) != 0;
}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
  check_vertex(v);
  std::vector<std::size_t> out;
  for (const auto &[a, b] : edges_) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph Graph::without_vertex(std::size_t v) const {
  check_vertex(v);
  Graph g(n_ - 1);
  auto shift = [v](std::size_t u) { return u > v ? u - 1 : u; };
  for (const auto &[a, b] : edges_)
    if (a != v && b != v) g.add_edge(shift(a), shift(b));
  for (std::size_t u = 0; u < n_; ++u)
    if (u != v) g.labels_[shift(u)] = labels_[u];
  return g;
}

std::string Graph::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["edges"] = nlohmann::json::array();
  for (const auto &[a, b] : edges_) j["edges"].push_back({a, b});
  return j.dump();
}

Graph Graph::from_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("graph json: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("edges")) throw ValidationError("graph json needs n and edges");
  Graph g(j.at("n").get<std::size_t>());
  for (const auto &e : j.at("edges")) g.add_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  return g;
}

Graph build_cluster(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw ValidationError("cluster dimensions must be positive");
  Graph g(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      g.set_label(v, "r" + std::to_string(r) + "c" + std::to_string(c));
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  }
  return g;
}

Graph build_tree(const std::vector<std::size_t> &branching) {
  if (branching.empty()) throw ValidationError("branching vector must be nonempty");
  for (auto b : branching)
    if (b == 0) throw ValidationError("branching parameters must be positive");

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> level{0};
  std::size_t next = 1;
  for (auto b : branching) {
    std::vector<std::size_t> children;
    for (auto parent : level) {
      for (std::size_t i = 0; i < b; ++i) {
        edges.emplace_back(parent, next);
        children.push_back(next++);
      }
    }
    level = std::move(children);
  }
  Graph g(next, edges);
  g.set_label(0, "root");
  return g;
}

Graph build_rgs(std::size_t b0) {
  if (b0 < 2) throw ValidationError("repeater graph state needs b0 >= 2");
  Graph g(2 * b0);
  for (std::size_t i = 0; i < b0; ++i) {
    for (std::size_t j = i + 1; j < b0; ++j) g.add_edge(i, j);
    g.add_edge(i, b0 + i);
    g.set_label(i, "core");
    g.set_label(b0 + i, "leaf");
  }
  return g;
}

StabilizerTableau stabilizers_of(const Graph &g) {
  const std::size_t n = g.vertex_count();
  std::vector<PauliString> rows;
  rows.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    PauliString p = PauliString::single(n, v, Pauli::X);
    for (auto u : g.neighbors(v)) p.set_z(u, true);
    rows.push_back(std::move(p));
  }
  return StabilizerTableau(n, std::move(rows));
}

Graph local_complement(const Graph &g, std::size_t v) {
  if (v >= g.vertex_count()) throw ValidationError("local_complement: vertex out of range");
  Graph out = g;
  const auto nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) out.toggle_edge(nb[i], nb[j]);
  return out;
}

}  // namespace gsforge
