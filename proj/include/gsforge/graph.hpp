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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gsforge/tableau.hpp"

namespace gsforge {

/// Undirected simple graph on vertices 0..n-1.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;  // first < second

  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), labels_(n) {}
  Graph(std::size_t n, const std::vector<Edge> &edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<Edge> &edges() const { return edges_; }

  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);
  void toggle_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;
  std::vector<std::size_t> neighbors(std::size_t v) const;

  /// Drops vertex v; higher indices shift down by one.
  Graph without_vertex(std::size_t v) const;

  const std::string &label(std::size_t v) const { return labels_.at(v); }
  void set_label(std::size_t v, std::string l) { labels_.at(v) = std::move(l); }

  /// {"n": int, "edges": [[u,v],...]}, edges sorted lexicographically.
  std::string to_json() const;
  static Graph from_json(const std::string &text);

  /// Edge sets compared; labels ignored.
  friend bool operator==(const Graph &a, const Graph &b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void check_vertex(std::size_t v) const;

  std::size_t n_ = 0;
  std::set<Edge> edges_;
  std::vector<std::string> labels_;
};

/// k x n lattice; vertex (r, c) has index r*n + c.
Graph build_cluster(std::size_t rows, std::size_t cols);

/// Rooted tree. Vertex 0 is the root, then level 1 (root's children), then
/// level 2 grouped by parent, and so on (breadth-first numbering).
Graph build_tree(const std::vector<std::size_t> &branching);

/// Repeater graph state: complete graph on cores 0..b0-1, leaf b0+i on core i.
Graph build_rgs(std::size_t b0);

/// Graph-state generators K_v = X_v prod_{u in N(v)} Z_u, all signs +.
StabilizerTableau stabilizers_of(const Graph &g);

/// Complements the subgraph induced on N(v).
Graph local_complement(const Graph &g, std::size_t v);

}  // namespace gsforge
