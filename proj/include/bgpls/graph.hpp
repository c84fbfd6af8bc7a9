// Copyright 2026 The bgpls Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BGPLS_GRAPH_HPP_
#define BGPLS_GRAPH_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bgpls {

using VertexId = std::uint64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

// Simple connected graph over arbitrary distinct IDs. Vertices are addressed
// by dense index; `ids` is sorted so index order equals ID order.
struct Graph {
  std::vector<VertexId> ids;
  std::vector<std::vector<int>> adj;  // sorted neighbour indices

  int n() const { return static_cast<int>(ids.size()); }
  std::size_t num_edges() const;
  int index_of(VertexId id) const;  // -1 when absent
  bool has_edge(int u, int v) const;
  bool connected() const;
  std::vector<std::pair<int, int>> edges() const;  // u < v, lexicographic

  static Graph from_edges(std::vector<VertexId> ids,
                          const std::vector<std::pair<VertexId, VertexId>>& e);
};

// Throws InvalidGraph unless g is simple, connected, and its IDs lie in
// [1, n^2].
void validate(const Graph& g);

struct Degeneracy {
  std::vector<int> order;  // removal order
  std::vector<int> rank;   // rank[v] = position of v in order
  int d = 0;
};

// Repeatedly removes a minimum-degree vertex, lowest ID first.
Degeneracy degeneracy_order(const Graph& g);

struct SpanningTree {
  int root = -1;
  std::vector<int> parent;  // -1 at the root
  std::vector<int> dist;
};

// BFS tree; neighbours are scanned in increasing ID order.
SpanningTree spanning_tree(const Graph& g, int root);

}  // namespace bgpls

#endif  // BGPLS_GRAPH_HPP_
