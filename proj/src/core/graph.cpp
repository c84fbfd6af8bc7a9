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

#include "bgpls/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace bgpls {

std::size_t Graph::num_edges() const {
  std::size_t twice = 0;
  for (const auto& a : adj) twice += a.size();
  return twice / 2;
}

int Graph::index_of(VertexId id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return -1;
  return static_cast<int>(it - ids.begin());
}

bool Graph::has_edge(int u, int v) const {
  return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

bool Graph::connected() const {
  if (ids.empty()) return true;
  std::vector<char> seen(ids.size(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == ids.size();
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n(); ++u) {
    for (int v : adj[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::from_edges(std::vector<VertexId> ids,
                        const std::vector<std::pair<VertexId, VertexId>>& e) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InvalidGraph("duplicate vertex id");
  }
  Graph g;
  g.ids = std::move(ids);
  g.adj.assign(g.ids.size(), {});
  for (auto [a, b] : e) {
    int u = g.index_of(a);
    int v = g.index_of(b);
    if (u < 0 || v < 0) throw InvalidGraph("edge references unknown vertex");
    if (u == v) throw InvalidGraph("self-loop at " + std::to_string(a));
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
      throw InvalidGraph("parallel edges");
    }
  }
  return g;
}

void validate(const Graph& g) {
  const auto n = static_cast<VertexId>(g.n());
  for (VertexId id : g.ids) {
    if (id < 1 || id > std::max<VertexId>(1, n * n)) {
      throw InvalidGraph("vertex id " + std::to_string(id) +
                         " outside [1, n^2]");
    }
  }
  for (int v = 0; v < g.n(); ++v) {
    for (std::size_t i = 0; i < g.adj[v].size(); ++i) {
      int w = g.adj[v][i];
      if (w == v) throw InvalidGraph("self-loop");
      if (i > 0 && g.adj[v][i - 1] >= w) throw InvalidGraph("parallel edges");
      if (!g.has_edge(w, v)) throw InvalidGraph("asymmetric adjacency");
    }
  }
  if (!g.connected()) throw InvalidGraph("graph is not connected");
}

Degeneracy degeneracy_order(const Graph& g) {
  const int n = g.n();
  Degeneracy out;
  out.rank.assign(n, -1);
  std::vector<int> deg(n);
  std::set<std::pair<int, int>> queue;  // (degree, index); index order = ID
  for (int v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(g.adj[v].size());
    queue.emplace(deg[v], v);
  }
  while (!queue.empty()) {
    auto [dv, v] = *queue.begin();
    queue.erase(queue.begin());
    out.rank[v] = static_cast<int>(out.order.size());
    out.order.push_back(v);
    out.d = std::max(out.d, dv);
    for (int w : g.adj[v]) {
      if (out.rank[w] >= 0) continue;
      queue.erase({deg[w], w});
      --deg[w];
      queue.emplace(deg[w], w);
    }
  }
  return out;
}

SpanningTree spanning_tree(const Graph& g, int root) {
  SpanningTree t;
  t.root = root;
  t.parent.assign(g.n(), -1);
  t.dist.assign(g.n(), -1);
  std::deque<int> q = {root};
  t.dist[root] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.adj[v]) {
      if (t.dist[w] >= 0) continue;
      t.dist[w] = t.dist[v] + 1;
      t.parent[w] = v;
      q.push_back(w);
    }
  }
  return t;
}

}  // namespace bgpls
