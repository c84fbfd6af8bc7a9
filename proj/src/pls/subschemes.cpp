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


#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "bgpls/pls.hpp"

namespace bgpls {

namespace {

std::vector<int> bfs_dist(const std::vector<std::vector<int>>& adj, int root) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : adj[u]) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<TreeFragment> tree_fragments(const Graph& g, int root) {
  const auto dist = bfs_dist(g.adj, root);
  std::vector<TreeFragment> out(g.n());
  for (int v = 0; v < g.n(); ++v) {
    if (dist[v] < 0) throw InvalidGraph("graph is not connected");
    out[v].dist = static_cast<std::uint64_t>(dist[v]);
    out[v].parent = g.ids[v];
    for (int w : g.adj[v]) {  // sorted, so the first hit has the smallest ID
      if (dist[w] == dist[v] - 1) {
        out[v].parent = g.ids[w];
        break;
      }
    }
  }
  return out;
}

Verdict check_tree_fragment(VertexId self, VertexId root, const TreeFragment& own,
                            const std::vector<std::pair<VertexId, TreeFragment>>& neighbours) {
  if (self == root) {
    if (own.dist != 0 || own.parent != self) {
      return Verdict::reject(Reason::kTree, "root must have distance 0 and point to itself");
    }
  } else if (own.dist == 0) {
    return Verdict::reject(Reason::kTree, "distance 0 away from the root");
  }
  std::optional<VertexId> closer;
  for (const auto& [w, f] : neighbours) {
    const auto lo = std::min(f.dist, own.dist), hi = std::max(f.dist, own.dist);
    if (hi - lo > 1) return Verdict::reject(Reason::kTree, "neighbour distances differ by more than one");
    if (own.dist > 0 && f.dist == own.dist - 1 && (!closer || w < *closer)) closer = w;
  }
  if (self != root && (!closer || own.parent != *closer)) {
    return Verdict::reject(Reason::kTree, "parent is not the smallest closer neighbour");
  }
  return {};
}

std::vector<ObjectFragment> tree_subcertificates(const Graph& g, const std::vector<int>& object,
                                                 bool closed) {
  if (object.empty()) throw Error("empty object");
  const auto tree = tree_fragments(g, object.front());
  std::vector<ObjectFragment> out(g.n());
  for (int v = 0; v < g.n(); ++v) {
    out[v].root = g.ids[object.front()];
    out[v].length = object.size();
    out[v].closed = closed;
    out[v].tree = tree[v];
  }
  const std::size_t len = object.size();
  for (std::size_t i = 0; i < len; ++i) {
    ObjectFragment& f = out[object[i]];
    if (f.on) throw Error("object visits a vertex twice");
    f.on = true;
    f.pos = i;
    if (closed || i > 0) f.pred = g.ids[object[(i + len - 1) % len]];
    if (closed || i + 1 < len) f.succ = g.ids[object[(i + 1) % len]];
  }
  return out;
}

Verdict check_object_fragment(VertexId self, const ObjectFragment& own,
                              const std::vector<std::pair<VertexId, ObjectFragment>>& neighbours) {
  std::vector<std::pair<VertexId, TreeFragment>> trees;
  const ObjectFragment* pred = nullptr;
  const ObjectFragment* succ = nullptr;
  for (const auto& [w, f] : neighbours) {
    if (f.root != own.root || f.length != own.length || f.closed != own.closed) {
      return Verdict::reject(Reason::kChain, "neighbours disagree on the object");
    }
    trees.emplace_back(w, f.tree);
    if (w == own.pred) pred = &f;
    if (w == own.succ) succ = &f;
  }
  if (Verdict t = check_tree_fragment(self, own.root, own.tree, trees); !t.accept()) return t;
  if (own.length == 0 || (own.closed && own.length < 3)) {
    return Verdict::reject(Reason::kChain, "object too short");
  }
  if (!own.on) {
    if (own.pred != 0 || own.succ != 0 || own.pos != 0 || self == own.root) {
      return Verdict::reject(Reason::kChain, "vertex off the object carries object data");
    }
    return {};
  }
  if (own.pos >= own.length) return Verdict::reject(Reason::kChain, "position out of range");
  if ((own.pos == 0) != (self == own.root)) {
    return Verdict::reject(Reason::kChain, "position 0 must be at the root");
  }
  const bool first = !own.closed && own.pos == 0;
  const bool last = !own.closed && own.pos + 1 == own.length;
  if ((own.pred == 0) != first || (own.succ == 0) != last) {
    return Verdict::reject(Reason::kChain, "missing or extra neighbour on the object");
  }
  if (own.pred != 0 && own.pred == own.succ) {
    return Verdict::reject(Reason::kChain, "predecessor equals successor");
  }
  if ((own.pred != 0 && !pred) || (own.succ != 0 && !succ)) {
    return Verdict::reject(Reason::kChain, "object neighbour is not adjacent");
  }
  if (succ && (!succ->on || succ->pred != self || succ->pos != (own.pos + 1) % own.length)) {
    return Verdict::reject(Reason::kChain, "successor does not point back");
  }
  if (pred && (!pred->on || pred->succ != self)) {
    return Verdict::reject(Reason::kChain, "predecessor does not point back");
  }
  return {};
}

PlanarityLabels planarity_labels(const EmbeddingScheme& s, int root, int start,
                                 const std::vector<Avatar>& key) {
  const int n = s.num_vertices();
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = s.neighbours(v);
  const auto dist = bfs_dist(adj, root);
  std::vector<int> parent(n, -1);
  for (int v = 0; v < n; ++v) {
    if (dist[v] < 0) throw InvalidGraph("final stage is not connected");
    if (v == root) continue;
    for (int w : adj[v]) {
      if (dist[w] == dist[v] - 1 && (parent[v] < 0 || key[w] < key[parent[v]])) parent[v] = w;
    }
  }
  return tour_labels(s, root, start, parent);
}

PlanarityLabels tour_labels(const EmbeddingScheme& s, int root, int start,
                            const std::vector<int>& parent) {
  const int n = s.num_vertices();
  const int darts = s.num_darts();
  PlanarityLabels out;
  out.root = root;
  out.darts = static_cast<std::uint64_t>(darts);
  out.dart.resize(darts);
  out.dist.assign(n, 0);
  std::vector<char> tree_edge(s.num_edges(), 0);
  for (int v = 0; v < n; ++v) {
    int depth = 0;
    for (int u = v; u != root; u = parent[u]) {
      if (u < 0 || ++depth > n) throw Error("parents do not form a tree towards the root");
    }
    out.dist[v] = static_cast<std::uint64_t>(depth);
    if (v == root) continue;
    const int d = s.find_dart(v, parent[v]);
    if (d < 0) throw Error("tree parent is not a neighbour");
    out.dart[d].parent = true;
    tree_edge[EmbeddingScheme::edge_of(d)] = 1;
  }
  if (darts == 0) return out;
  if (s.origin(start) != root) throw Error("tour must start at the root");
  std::vector<std::uint64_t> idx(darts, 0);
  std::vector<char> seen(darts, 0);
  int d = start;
  for (int t = 0; t < darts; ++t) {
    if (seen[d]) throw Error("tour closed early");
    seen[d] = 1;
    idx[d] = static_cast<std::uint64_t>(t);
    d = tree_edge[EmbeddingScheme::edge_of(d)] ? s.next(EmbeddingScheme::twin(d)) : s.next(d);
  }
  std::vector<int> by_idx(darts);
  for (int e = 0; e < darts; ++e) by_idx[idx[e]] = e;
  const std::uint64_t none = out.darts;
  std::vector<std::uint64_t> stack;
  auto top = [&] { return stack.empty() ? none : stack.back(); };
  for (int t = 0; t < darts; ++t) {
    const int e = by_idx[t];
    DartLabel& l = out.dart[e];
    l.idx = idx[e];
    const std::uint64_t partner = idx[EmbeddingScheme::twin(e)];
    if (tree_edge[EmbeddingScheme::edge_of(e)] || l.idx < partner) {
      l.cov = top();
      if (!tree_edge[EmbeddingScheme::edge_of(e)]) stack.push_back(l.idx);
      continue;
    }
    // Right end: a planar tour closes the innermost chord; otherwise the
    // chord is dropped wherever it sits and the labels stay inconsistent.
    auto it = std::find(stack.begin(), stack.end(), partner);
    if (it != stack.end()) stack.erase(it);
    l.cov = out.dart[EmbeddingScheme::twin(e)].cov;
  }
  return out;
}

Verdict check_planar_vertex(const PlanarVertexView& v, std::uint64_t darts, Avatar root) {
  const auto& d = v.darts;
  const std::size_t deg = d.size();
  auto bad = [](const std::string& what) { return Verdict::reject(Reason::kPlanarity, what); };
  // Spanning tree: exact distances, canonical parent.
  if (v.key == root) {
    if (v.dist != 0) return bad("root distance must be 0");
  } else if (v.dist == 0) {
    return bad("distance 0 away from the root");
  }
  int parents = 0;
  std::optional<Avatar> closer, parent;
  std::set<Avatar> targets;
  for (const auto& x : d) {
    if (!targets.insert(x.target).second) return bad("parallel darts");
    const auto lo = std::min(x.target_dist, v.dist), hi = std::max(x.target_dist, v.dist);
    if (hi - lo > 1) return bad("neighbour distances differ by more than one");
    if (v.dist > 0 && x.target_dist == v.dist - 1 && (!closer || x.target < *closer)) {
      closer = x.target;
    }
    if (x.out.parent && x.back.parent) return bad("two vertices are each other's parent");
    if (x.out.parent) {
      ++parents;
      parent = x.target;
    }
  }
  if (v.key == root ? parents != 0 : (parents != 1 || parent != closer)) {
    return bad("parent is not the smallest closer neighbour");
  }
  if (deg == 0) {
    if (darts != 0 || !(v.key == root)) return bad("isolated vertex in a graph with edges");
    return {};
  }
  // Tour indices and the rotation they induce.
  std::vector<int> at;  // dart position by index, via a sorted list
  std::vector<std::pair<std::uint64_t, int>> order;
  bool has_zero = false;
  for (std::size_t i = 0; i < deg; ++i) {
    const auto& x = d[i];
    if (x.out.idx >= darts || x.back.idx >= darts || x.out.cov > darts || x.back.cov > darts) {
      return bad("label out of range");
    }
    if (x.out.idx == x.back.idx) return bad("both ends of an edge share an index");
    if (x.out.idx == 0) has_zero = true;
    order.emplace_back(x.out.idx, static_cast<int>(i));
  }
  std::sort(order.begin(), order.end());
  for (std::size_t i = 1; i < deg; ++i) {
    if (order[i].first == order[i - 1].first) return bad("two darts share an index");
  }
  if (has_zero != (v.key == root)) return bad("index 0 must leave the root");
  auto find = [&](std::uint64_t idx) -> int {
    auto it = std::lower_bound(order.begin(), order.end(), std::pair(idx, -1));
    return it != order.end() && it->first == idx ? it->second : -1;
  };
  auto is_tree = [&](std::size_t i) { return d[i].out.parent || d[i].back.parent; };
  std::vector<int> next(deg), prev(deg, -1);
  for (std::size_t i = 0; i < deg; ++i) {
    const std::uint64_t from = is_tree(i) ? d[i].back.idx : d[i].out.idx;
    next[i] = find((from + 1) % darts);
    if (next[i] < 0) return bad("tour leaves the vertex");
    if (prev[next[i]] >= 0) return bad("rotation is not a permutation");
    prev[next[i]] = static_cast<int>(i);
  }
  std::size_t cycle = 1;
  for (int i = next[0]; i != 0; i = next[i]) ++cycle;
  if (cycle != deg) return bad("rotation is not a single cycle");
  // Chords must nest: the chord closing at a dart is the innermost open one.
  const std::uint64_t none = darts;
  std::vector<char> uncovered(deg, 0);
  for (std::size_t y = 0; y < deg; ++y) {
    const auto& x = d[prev[y]];
    std::uint64_t open;
    if (is_tree(prev[y])) {
      open = x.back.cov;  // arrived along the tree edge from the target
    } else {
      open = x.out.idx < x.back.idx ? x.out.idx : x.out.cov;
    }
    if (d[y].out.idx == 0) {
      if (open != none) return bad("tour ends inside a chord");
    }
    const bool right_end = !is_tree(y) && d[y].back.idx < d[y].out.idx;
    if (right_end) {
      if (open != d[y].back.idx) return bad("chords cross");
      if (d[y].out.cov != d[y].back.cov) return bad("chord ends disagree on their enclosure");
    } else if (d[y].out.cov != open) {
      return bad("enclosing chord not propagated");
    }
    uncovered[y] = open == none;
  }
  if (v.face) {
    std::set<int> claimed;
    for (auto [px, pz] : *v.face) {
      if (px < 0 || pz < 0 || px >= static_cast<int>(deg) || pz >= static_cast<int>(deg)) {
        return Verdict::reject(Reason::kFace, "face corner uses a non-edge");
      }
      if (next[px] != pz) return Verdict::reject(Reason::kFace, "walk does not turn at a corner");
      if (!uncovered[pz]) return Verdict::reject(Reason::kFace, "walk corner is not on the face");
      if (!claimed.insert(pz).second) return Verdict::reject(Reason::kFace, "corner visited twice");
    }
    const auto open_corners = static_cast<std::size_t>(std::count(uncovered.begin(), uncovered.end(), 1));
    if (open_corners != claimed.size()) {
      return Verdict::reject(Reason::kFace, "face corner missing from the walk");
    }
  }
  return {};
}

std::vector<PlanarVertexView> planarity_views(const EmbeddingScheme& s,
                                              const PlanarityLabels& labels,
                                              const std::vector<int>* face_walk) {
  std::vector<PlanarVertexView> out(s.num_vertices());
  for (int v = 0; v < s.num_vertices(); ++v) {
    PlanarVertexView& view = out[v];
    view.key = {s.id(v), 1};
    view.dist = labels.dist[v];
    for (int d : s.rotation(v)) {
      view.darts.push_back({{s.id(s.head(d)), 1},
                            labels.dist[s.head(d)],
                            labels.dart[d],
                            labels.dart[EmbeddingScheme::twin(d)]});
    }
    if (face_walk) view.face.emplace();
  }
  if (face_walk) {
    const auto& w = *face_walk;
    const std::size_t len = w.size();
    for (std::size_t i = 0; i < len; ++i) {
      const int y = w[i];
      auto position = [&](int target) {
        const auto& rot = s.rotation(y);
        for (std::size_t p = 0; p < rot.size(); ++p) {
          if (s.head(rot[p]) == target) return static_cast<int>(p);
        }
        return -1;
      };
      out[y].face->emplace_back(position(w[(i + len - 1) % len]), position(w[(i + 1) % len]));
    }
  }
  return out;
}

std::vector<std::pair<int, int>> uncovered_visits(const EmbeddingScheme& s,
                                                  const PlanarityLabels& labels) {
  const int darts = s.num_darts();
  std::vector<int> by_idx(darts);
  for (int e = 0; e < darts; ++e) by_idx[labels.dart[e].idx] = e;
  auto is_tree = [&](int e) {
    return labels.dart[e].parent || labels.dart[EmbeddingScheme::twin(e)].parent;
  };
  std::vector<std::pair<int, int>> out;
  int visit = 1, at = labels.root;
  bool open = true;  // the gap before index 0 is outside every chord
  for (int t = 0; t < darts; ++t) {
    const int e = by_idx[t];
    // Gap before e belongs to the current visit.
    if (t > 0) {
      const int p = by_idx[t - 1];
      const DartLabel& pl = labels.dart[p];
      std::uint64_t enclosing;
      if (is_tree(p)) {
        enclosing = pl.cov;
      } else {
        enclosing = pl.idx < labels.dart[EmbeddingScheme::twin(p)].idx ? pl.idx : pl.cov;
      }
      if (enclosing == labels.darts) open = true;
    }
    if (is_tree(e)) {
      if (open) out.emplace_back(visit, at);
      ++visit;
      at = s.head(e);
      open = false;
    }
  }
  if (darts > 0) {
    const int p = by_idx[darts - 1];
    const DartLabel& pl = labels.dart[p];
    std::uint64_t enclosing =
        is_tree(p) ? pl.cov
                   : (pl.idx < labels.dart[EmbeddingScheme::twin(p)].idx ? pl.idx : pl.cov);
    if (enclosing == labels.darts) open = true;
  }
  if (open) out.emplace_back(visit, at);
  return out;
}

}  // namespace bgpls
