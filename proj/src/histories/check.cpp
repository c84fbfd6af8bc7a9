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
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "bgpls/histories.hpp"
#include "level_index.hpp"
#include "rules.hpp"

namespace bgpls {

using detail::LevelIndex;
using detail::primed;

AvatarGraph AvatarGraph::from_scheme(const EmbeddingScheme& s, const std::vector<Avatar>& names) {
  AvatarGraph ag;
  ag.vertices = names;
  std::sort(ag.vertices.begin(), ag.vertices.end());
  ag.adj.resize(ag.vertices.size());
  for (int v = 0; v < s.num_vertices(); ++v) {
    const int a = ag.index_of(names[v]);
    for (int w : s.neighbours(v)) ag.adj[a].push_back(ag.index_of(names[w]));
    std::sort(ag.adj[a].begin(), ag.adj[a].end());
  }
  return ag;
}

int AvatarGraph::index_of(const Avatar& a) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), a);
  return it != vertices.end() && *it == a ? static_cast<int>(it - vertices.begin()) : -1;
}

bool ConsistencyReport::has(int condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.condition == condition; });
}

namespace {

using Fp = detail::FpT<int>;

struct Match {
  Rule rule = Rule::kNone;
  bool swapped = false;
  std::array<Fp, 2> used;  // per child slot
};

// Follows single-successor edges. Returns the vertex sequence of one simple
// directed cycle (closed) or path (!closed) using every edge, or nullopt.
std::optional<std::vector<int>> chain(const std::vector<std::pair<int, int>>& edges,
                                      bool closed) {
  if (edges.empty()) return std::nullopt;
  std::map<int, int> succ, indeg;
  for (auto [a, b] : edges) {
    if (a == b || !succ.emplace(a, b).second) return std::nullopt;
    if (++indeg[b] > 1) return std::nullopt;
  }
  int start = edges.front().first;
  if (!closed) {
    int starts = 0;
    for (auto [a, b] : edges) {
      if (!indeg.count(a)) {
        start = a;
        ++starts;
      }
    }
    if (starts != 1) return std::nullopt;
  }
  std::vector<int> seq{start};
  std::set<int> seen{start};
  int cur = start;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto it = succ.find(cur);
    if (it == succ.end()) return std::nullopt;
    cur = it->second;
    if (k + 1 == edges.size() && closed) {
      if (cur != start) return std::nullopt;
      break;
    }
    if (!seen.insert(cur).second) return std::nullopt;
    seq.push_back(cur);
  }
  return seq;
}

class Checker {
 public:
  Checker(const Graph& g, const AvatarGraph& hs, const std::vector<Avatar>& walk,
          const HistoryCollection& hc)
      : g_(g), hs_(hs), walk_(walk), hc_(hc), sch_(hc.schedule) {}

  ConsistencyReport run() {
    if (check_trees()) {
      check_stage_graphs();
      check_footprints();
      check_rules();
      check_links();
      check_walk();
      for (int level = 1; level <= sch_.depth; ++level) {
        check_image(level);
        switch (sch_.kind(level)) {
          case StepKind::kPathDup:
            check_path(level);
            break;
          case StepKind::kCycleDup:
            check_cycle(level);
            break;
          case StepKind::kCycleDouble:
            check_doubling(level);
            break;
        }
      }
    }
    return report_;
  }

  LevelIndex ix;
  std::vector<std::vector<std::set<int>>> adj;      // stage graphs
  std::vector<std::vector<std::vector<Fp>>> fp;     // accepted footprints
  std::map<std::pair<int, int>, Match> matches;     // (level, pos) of binary nodes

  std::vector<int> binary_nodes(int level) const {
    std::vector<int> out;
    for (std::size_t p = 0; p < ix.children[level].size(); ++p) {
      if (ix.children[level][p].size() == 2) out.push_back(static_cast<int>(p));
    }
    return out;
  }

  std::vector<std::pair<int, int>> typed_edges(int level, EdgeType t) const {
    std::vector<std::pair<int, int>> out;
    for (const auto& node : fp[level]) {
      for (const Fp& f : node) {
        if (f.out == t) out.emplace_back(f.y, f.z);
      }
    }
    return out;
  }

 private:
  VertexId vertex_at(int level, int pos) const {
    return ix.node(level, pos, hc_).s.front().id;
  }

  void violate(int condition, const std::string& code, VertexId v, int level,
               const std::string& detail) {
    report_.violations.push_back({condition, code, v, level, detail});
  }

  bool check_trees() {
    const int depth = sch_.depth;
    bool ok = true;
    if (sch_.m < 0 || sch_.kprime < 0 || depth < 0 ||
        (depth == 0 && (sch_.m != 0 || sch_.kprime != 0)) ||
        (depth > 0 && (sch_.m + sch_.kprime < 1 || sch_.paths() != sch_.m + 2 * sch_.kprime - 1))) {
      violate(1, "schedule", 0, -1, "stage schedule does not add up");
      return false;
    }
    if (static_cast<int>(hc_.histories.size()) != g_.n()) {
      violate(1, "tree", 0, -1, "one history per vertex expected");
      return false;
    }
    for (int h = 0; h < g_.n(); ++h) {
      const History& hist = hc_.histories[h];
      if (hist.id != g_.ids[h]) {
        violate(1, "tree", hist.id, -1, "history IDs differ from the graph");
        return false;
      }
      if (hist.nodes.empty()) {
        violate(1, "tree", hist.id, -1, "empty history");
        ok = false;
        continue;
      }
      std::vector<int> seen(hist.nodes.size(), 0);
      std::vector<std::pair<int, int>> stack{{0, 0}};
      seen[0] = 1;
      while (!stack.empty()) {
        auto [i, level] = stack.back();
        stack.pop_back();
        const HistoryNode& node = hist.nodes[i];
        auto bad = [&](const std::string& what) {
          violate(1, "tree", hist.id, level, what);
          ok = false;
        };
        if (node.level != level) bad("node level does not match its depth");
        if (node.s.empty() || !std::is_sorted(node.s.begin(), node.s.end()) ||
            std::adjacent_find(node.s.begin(), node.s.end()) != node.s.end()) {
          bad("avatar set is not a sorted set");
          continue;
        }
        if (level == 0 && std::any_of(node.s.begin(), node.s.end(),
                                      [&](const Avatar& a) { return a.id != hist.id; })) {
          bad("root holds avatars of another vertex");
        }
        if (level == depth) {
          if (!node.children.empty()) bad("leaf below the last level");
          if (node.s.size() != 1) bad("leaf avatar set is not a singleton");
          continue;
        }
        if (node.children.empty() || node.children.size() > 2) {
          bad("internal node needs one or two children");
          continue;
        }
        AvatarSet merged;
        for (int c : node.children) {
          if (c < 0 || c >= static_cast<int>(hist.nodes.size()) || seen[c]) {
            bad("child index reused or out of range");
            continue;
          }
          seen[c] = 1;
          stack.emplace_back(c, level + 1);
          merged.insert(merged.end(), hist.nodes[c].s.begin(), hist.nodes[c].s.end());
        }
        std::sort(merged.begin(), merged.end());
        if (merged != node.s) bad("avatar set differs from the union of its children");
      }
      if (std::count(seen.begin(), seen.end(), 0) > 0) {
        violate(1, "tree", hist.id, -1, "unreachable history nodes");
        ok = false;
      }
    }
    if (!ok) return false;
    ix = LevelIndex::build(hc_);
    for (int level = 0; level <= depth; ++level) {
      std::size_t total = 0;
      for (std::size_t p = 0; p < ix.nodes[level].size(); ++p) {
        total += ix.node(level, static_cast<int>(p), hc_).s.size();
      }
      if (total != ix.owner[level].size()) {
        violate(1, "tree", 0, level, "avatar sets overlap");
        ok = false;
      }
    }
    if (ok) {
      std::vector<Avatar> leaves;
      for (const auto& [a, pos] : ix.owner[depth]) leaves.push_back(a);
      if (leaves != hs_.vertices) {
        violate(1, "tree", 0, depth, "leaves do not partition the final stage");
        ok = false;
      }
    }
    return ok;
  }

  void check_stage_graphs() {
    const int depth = sch_.depth;
    adj.assign(depth + 1, {});
    for (int level = 0; level <= depth; ++level) adj[level].resize(ix.nodes[level].size());
    for (std::size_t a = 0; a < hs_.vertices.size(); ++a) {
      const int p = ix.owner[depth].at(hs_.vertices[a]);
      for (int b : hs_.adj[a]) adj[depth][p].insert(ix.owner[depth].at(hs_.vertices[b]));
    }
    for (int level = depth; level >= 1; --level) {
      for (std::size_t p = 0; p < adj[level].size(); ++p) {
        const int pp = up(level, static_cast<int>(p));
        for (int q : adj[level][p]) {
          const int qq = up(level, q);
          if (pp == qq) {
            violate(1, "stage-graph", vertex_at(level, static_cast<int>(p)), level,
                    "edge between two copies of one vertex");
            continue;
          }
          adj[level - 1][pp].insert(qq);
        }
      }
    }
    for (int v = 0; v < g_.n(); ++v) {
      std::set<int> want(g_.adj[v].begin(), g_.adj[v].end());
      if (adj[0][v] != want) violate(1, "stage-graph", g_.ids[v], 0, "first stage is not the graph");
    }
    for (int level = 0; level <= depth; ++level) {
      for (std::size_t p = 0; p < adj[level].size(); ++p) {
        const HistoryNode& node = ix.node(level, static_cast<int>(p), hc_);
        std::vector<AvatarSet> want;
        for (int q : adj[level][p]) want.push_back(ix.node(level, q, hc_).s);
        std::sort(want.begin(), want.end());
        if (node.n != want) {
          violate(1, "neighbourhood", vertex_at(level, static_cast<int>(p)), level,
                  "neighbourhood differs from the stage graph");
        }
      }
    }
  }

  bool type_ok(EdgeType t, int level) const {
    const int c = sch_.creation_level(t);
    return c >= 1 && c <= level;
  }

  void check_footprints() {
    fp.assign(sch_.depth + 1, {});
    for (int level = 0; level <= sch_.depth; ++level) {
      fp[level].resize(ix.nodes[level].size());
      for (std::size_t p = 0; p < ix.nodes[level].size(); ++p) {
        const HistoryNode& node = ix.node(level, static_cast<int>(p), hc_);
        for (const Footprint& f : node.f) {
          Fp q{ix.find(level, f.x, hc_), static_cast<int>(p), ix.find(level, f.z, hc_), f.in,
               f.out};
          std::string what;
          if (f.y != node.s) {
            what = "footprint centre is not the node";
          } else if (q.x < 0 || q.z < 0 || !adj[level][p].count(q.x) ||
                     !adj[level][p].count(q.z)) {
            what = "footprint end is not a neighbour";
          } else if (!type_ok(f.in, level) || !type_ok(f.out, level)) {
            what = "edge type missing or not yet created";
          }
          if (!what.empty()) {
            violate(1, "footprint", vertex_at(level, static_cast<int>(p)), level, what);
            continue;
          }
          fp[level][p].push_back(q);
        }
        std::sort(fp[level][p].begin(), fp[level][p].end());
      }
    }
  }

  Fp lift(int level, const Fp& f, int pos) const { return detail::lift(*this, level, f, pos); }

 public:
  int up(int level, int pos) const { return ix.parent[level][pos]; }
  bool split(int level, int pos) const {
    return ix.children[level - 1][up(level, pos)].size() == 2;
  }
  bool siblings(int level, int a, int b) const {
    return a != b && up(level, a) == up(level, b) && split(level, a);
  }

 private:
  void check_rules() {
    for (int level = 0; level < sch_.depth; ++level) {
      const int child_level = level + 1;
      for (std::size_t p = 0; p < ix.nodes[level].size(); ++p) {
        const int pos = static_cast<int>(p);
        const auto& kids = ix.children[level][p];
        const auto& parent = fp[level][p];
        if (kids.size() == 1) {
          std::vector<Fp> lifted;
          for (const Fp& f : fp[child_level][kids[0]]) lifted.push_back(lift(child_level, f, pos));
          std::sort(lifted.begin(), lifted.end());
          if (lifted != parent) {
            violate(1, "rule", vertex_at(level, pos), level, "vacancy does not forward");
          }
          continue;
        }
        const auto m = detail::match_split(*this, sch_, child_level, pos, fp[child_level][kids[0]],
                                           fp[child_level][kids[1]], parent);
        if (m.count == 0) {
          violate(1, "rule", vertex_at(level, pos), level, "no rule explains the split");
        } else if (m.count > 1) {
          violate(1, "ambiguous", vertex_at(level, pos), level, "two rule applications fit");
        } else {
          matches[{level, pos}] = {m.rule, m.swapped, {m.used[0], m.used[1]}};
        }
      }
    }
    for (std::size_t p = 0; p < ix.nodes[0].size(); ++p) {
      if (!ix.node(0, static_cast<int>(p), hc_).f.empty()) {
        violate(1, "root", vertex_at(0, static_cast<int>(p)), 0, "footprints reach the root");
      }
    }
  }

  void check_links() {
    for (int level = 1; level <= sch_.depth; ++level) {
      std::vector<std::tuple<int, int, EdgeType>> outs, ins;
      for (const auto& node : fp[level]) {
        for (const Fp& f : node) {
          outs.emplace_back(f.y, f.z, f.out);
          ins.emplace_back(f.x, f.y, f.in);
        }
      }
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      if (outs != ins) {
        std::vector<std::tuple<int, int, EdgeType>> diff;
        std::set_symmetric_difference(outs.begin(), outs.end(), ins.begin(), ins.end(),
                                      std::back_inserter(diff));
        violate(1, "link", vertex_at(level, std::get<0>(diff.front())), level,
                "footprints of neighbours disagree on an edge");
      }
    }
  }

  void check_walk() {
    const int depth = sch_.depth;
    if (depth == 0) {
      if (!walk_.empty()) violate(2, "walk", 0, 0, "walk given without any surgery");
      return;
    }
    const std::size_t len = walk_.size();
    std::vector<int> pos;
    for (const Avatar& a : walk_) {
      auto it = ix.owner[depth].find(a);
      if (it == ix.owner[depth].end()) {
        violate(2, "walk", a.id, depth, "walk visits an unknown avatar");
        return;
      }
      pos.push_back(it->second);
    }
    if (len < 3) {
      violate(2, "walk", 0, depth, "walk too short");
      return;
    }
    std::vector<std::array<int, 3>> want, got;
    for (std::size_t i = 0; i < len; ++i) {
      const int x = pos[(i + len - 1) % len], y = pos[i], z = pos[(i + 1) % len];
      if (!adj[depth][y].count(z)) {
        violate(2, "walk", walk_[i].id, depth, "walk leaves along a non-edge");
      }
      want.push_back({x, y, z});
    }
    for (const auto& node : fp[depth]) {
      for (const Fp& f : node) got.push_back({f.x, f.y, f.z});
    }
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) {
      std::vector<std::array<int, 3>> diff;
      std::set_symmetric_difference(want.begin(), want.end(), got.begin(), got.end(),
                                    std::back_inserter(diff));
      violate(2, "walk", vertex_at(depth, diff.front()[1]), depth,
              "leaf footprints do not chain into the walk");
    }
  }

  void check_image(int level) {
    std::vector<std::tuple<int, int, EdgeType>> lifted, below;
    for (const auto& node : fp[level]) {
      for (const Fp& f : node) {
        if (sch_.creation_level(f.out) == level) continue;
        lifted.emplace_back(up(level, f.y), up(level, f.z), f.out);
      }
    }
    for (const auto& node : fp[level - 1]) {
      for (const Fp& f : node) below.emplace_back(f.y, f.z, f.out);
    }
    std::sort(lifted.begin(), lifted.end());
    std::sort(below.begin(), below.end());
    if (lifted != below) {
      violate(3, "image", 0, level, "typed chains are not the image of the previous level");
    }
  }

  std::set<int> parents_of(int level, const std::vector<int>& seq) const {
    std::set<int> out;
    for (int v : seq) out.insert(up(level, v));
    return out;
  }

  bool same_split_set(int level, const std::set<int>& image) const {
    const auto b = binary_nodes(level - 1);
    return std::set<int>(b.begin(), b.end()) == image;
  }

  void check_path(int level) {
    const int j = sch_.index(level);
    const auto e1 = typed_edges(level, {TypeKind::kPPrime, j});
    const auto e2 = typed_edges(level, {TypeKind::kPSecond, j});
    if (e1.empty() && e2.empty()) {
      if (binary_nodes(level - 1).size() != 1) {
        violate(3, "path", 0, level, "single-vertex path must split exactly one vertex");
      }
      return;
    }
    auto p1 = chain(e1, false);
    auto p2 = chain(e2, false);
    if (!p1 || !p2 || p1->size() != p2->size()) {
      violate(3, "path", 0, level, "path types do not form two directed paths");
      return;
    }
    const std::size_t s = p1->size();
    for (std::size_t t = 0; t < s; ++t) {
      const int a = (*p1)[t], b = (*p2)[s - 1 - t];
      if (!siblings(level, a, b)) {
        violate(3, "path", vertex_at(level, a), level, "path copies are not paired");
        return;
      }
    }
    if (!same_split_set(level, parents_of(level, *p1))) {
      violate(3, "path", 0, level, "path does not cover the split vertices");
    }
  }

  void check_cycle(int level) {
    const int i = sch_.index(level);
    auto c1 = chain(typed_edges(level, {TypeKind::kCPrime, i}), true);
    auto c2 = chain(typed_edges(level, {TypeKind::kCSecond, i}), true);
    if (!c1 || !c2 || c1->size() != c2->size() || c1->size() < 3) {
      violate(4, "cycle", 0, level, "cycle types do not form two directed cycles");
      return;
    }
    const std::size_t r = c1->size();
    // Opposite traversal: c1[t] pairs with c2[(o - t) mod r] for one offset o.
    bool found = false;
    for (std::size_t o = 0; o < r && !found; ++o) {
      bool all = true;
      for (std::size_t t = 0; t < r && all; ++t) {
        all = siblings(level, (*c1)[t], (*c2)[(o + r - t) % r]);
      }
      found = all;
    }
    if (!found) {
      violate(4, "cycle", vertex_at(level, c1->front()), level,
              "cycle copies are not traversed in opposite directions");
      return;
    }
    if (!same_split_set(level, parents_of(level, *c1))) {
      violate(4, "cycle", 0, level, "cycle does not cover the split vertices");
    }
  }

  void check_doubling(int level) {
    const int i = sch_.index(level);
    auto c = chain(typed_edges(level, {TypeKind::kDPrime, i}), true);
    if (!c || c->size() % 2 != 0 || c->size() < 6) {
      violate(5, "doubling", 0, level, "doubling type does not form an even directed cycle");
      return;
    }
    const std::size_t r = c->size() / 2;
    for (std::size_t t = 0; t < r; ++t) {
      if (!siblings(level, (*c)[t], (*c)[t + r])) {
        violate(5, "doubling", vertex_at(level, (*c)[t]), level,
                "antipodal positions are not copies of one vertex");
        return;
      }
    }
    if (!same_split_set(level, parents_of(level, *c))) {
      violate(5, "doubling", 0, level, "doubled cycle does not cover the split vertices");
    }
  }

  const Graph& g_;
  const AvatarGraph& hs_;
  const std::vector<Avatar>& walk_;
  const HistoryCollection& hc_;
  const Schedule& sch_;
  ConsistencyReport report_;

};

}  // namespace

ConsistencyReport check_local_consistency(const Graph& g, const AvatarGraph& hstar,
                                          const std::vector<Avatar>& walk,
                                          const HistoryCollection& hc) {
  return Checker(g, hstar, walk, hc).run();
}

namespace {

class Rebuilder {
 public:
  Rebuilder(const Checker& chk, const Graph& g, const HistoryCollection& hc)
      : chk_(chk), g_(g), hc_(hc), sch_(hc.schedule) {}

  UnfoldingTrace run(const EmbeddingScheme& hstar, const std::vector<Avatar>& names) {
    const int depth = sch_.depth;
    UnfoldingTrace t;
    t.m = sch_.m;
    t.kprime = sch_.kprime;
    t.surface.orientable = sch_.m == 0;
    t.surface.genus = sch_.m > 0 ? sch_.m + 2 * sch_.kprime : sch_.kprime;
    idx_.assign(depth + 1, {});
    for (int v = 0; v < g_.n(); ++v) idx_[0].push_back(v);
    for (int level = 1; level <= depth; ++level) t.steps.push_back(step(level));

    const int n = hstar.num_vertices();
    std::vector<int> to(n);
    for (int v = 0; v < n; ++v) to[v] = idx_[depth][chk_.ix.owner[depth].at(names[v])];
    std::vector<std::vector<int>> rot(n);
    std::vector<std::pair<int, int>> negative;
    for (int v = 0; v < n; ++v) {
      for (int w : hstar.neighbours(v)) rot[to[v]].push_back(to[w]);
    }
    for (int e = 0; e < hstar.num_edges(); ++e) {
      if (hstar.sign(e) < 0) negative.emplace_back(to[hstar.ends(e)[0]], to[hstar.ends(e)[1]]);
    }
    std::vector<VertexId> ids = g_.ids;
    const VertexId top = g_.ids.empty() ? 0 : g_.ids.back();
    for (int i = g_.n(); i < n; ++i) ids.push_back(top + 1 + static_cast<VertexId>(i - g_.n()));
    std::vector<std::vector<int>> rot0(g_.adj.begin(), g_.adj.end());
    t.embeddings.push_back(EmbeddingScheme::from_rotation(g_.ids, rot0));
    t.embeddings.push_back(EmbeddingScheme::from_rotation(ids, rot, negative));
    for (const Avatar& a : hc_.walk) {
      auto it = chk_.ix.owner[depth].find(a);
      t.special_walk.push_back(it == chk_.ix.owner[depth].end() ? -1 : idx_[depth][it->second]);
    }
    return t;
  }

 private:
  std::vector<int> stage(int level, const std::vector<int>& seq) const {
    std::vector<int> out;
    for (int p : seq) out.push_back(idx_[level][p]);
    return out;
  }

  SurgeryStep step(int level) {
    const StepKind kind = sch_.kind(level);
    const int index = sch_.index(level);
    const EdgeType second = primed(kind, index, 1);
    std::optional<std::vector<int>> c1, c2;
    switch (kind) {
      case StepKind::kCycleDup:
        c1 = chain(chk_.typed_edges(level, {TypeKind::kCPrime, index}), true);
        c2 = chain(chk_.typed_edges(level, {TypeKind::kCSecond, index}), true);
        break;
      case StepKind::kPathDup:
        c1 = chain(chk_.typed_edges(level, {TypeKind::kPPrime, index}), false);
        break;
      case StepKind::kCycleDouble:
        c1 = chain(chk_.typed_edges(level, {TypeKind::kDPrime, index}), true);
        break;
    }

    // Which child of each split node becomes copy 0.
    const int n_pre = static_cast<int>(idx_[level - 1].size());
    std::vector<int> pos_of(n_pre);
    for (int p = 0; p < n_pre; ++p) pos_of[idx_[level - 1][p]] = p;
    std::vector<std::array<int, 2>> copies(n_pre, {-1, -1});
    for (int p = 0; p < n_pre; ++p) {
      const auto& kids = chk_.ix.children[level - 1][p];
      if (kids.size() != 2) {
        copies[p] = {kids[0], -1};
        continue;
      }
      const Match& m = chk_.matches.at({level - 1, p});
      bool swap = false;
      switch (m.rule) {
        case Rule::kElementary:
          swap = m.used[0].in == second;
          break;
        case Rule::kSingleExtremity:
          swap = (m.swapped ? m.used[0].in : m.used[0].out) == second;
          break;
        case Rule::kCrossCap:
          if (c1) {
            auto at = std::find(c1->begin(), c1->end(), kids[0]) - c1->begin();
            swap = at >= static_cast<long>(c1->size() / 2);
          }
          break;
        default:
          break;
      }
      copies[p] = swap ? std::array<int, 2>{kids[1], kids[0]} : std::array<int, 2>{kids[0], kids[1]};
    }

    SurgeryStep st;
    st.kind = kind;
    st.index = index;
    st.walk_seams = true;
    idx_[level].assign(chk_.ix.nodes[level].size(), -1);
    int next = n_pre;
    st.splitting.alpha.resize(n_pre);
    for (int u = 0; u < n_pre; ++u) {
      const int p = pos_of[u];
      idx_[level][copies[p][0]] = u;
      st.splitting.alpha[u].push_back(u);
      if (copies[p][1] >= 0) {
        idx_[level][copies[p][1]] = next;
        st.splitting.alpha[u].push_back(next++);
      }
    }

    std::vector<int> split;
    for (int p : chk_.binary_nodes(level - 1)) split.push_back(idx_[level - 1][p]);
    std::sort(split.begin(), split.end());
    auto parents = [&](const std::vector<int>& seq, std::size_t count) {
      std::vector<int> out;
      for (std::size_t t = 0; t < count; ++t) out.push_back(idx_[level - 1][chk_.up(level, seq[t])]);
      return out;
    };
    switch (kind) {
      case StepKind::kCycleDup:
        st.object = c1 ? parents(*c1, c1->size()) : split;
        if (c1) st.face_walks.push_back(stage(level, *c1));
        if (c2) st.face_walks.push_back(stage(level, *c2));
        break;
      case StepKind::kCycleDouble:
        st.object = c1 ? parents(*c1, c1->size() / 2) : split;
        if (c1) st.face_walks.push_back(stage(level, *c1));
        break;
      case StepKind::kPathDup:
        st.object = c1 ? parents(*c1, c1->size()) : split;
        if (!st.object.empty()) {
          const int p = pos_of[st.object.front()];
          if (copies[p][1] >= 0) {
            const Match& m = chk_.matches.at({level - 1, p});
            const int slot = chk_.ix.children[level - 1][p][0] == copies[p][0] ? 0 : 1;
            st.face_walks.push_back(stage(level, follow(level, m.used[slot])));
          }
        }
        break;
    }
    for (int p = 0; p < n_pre; ++p) {
      const auto& kids = chk_.ix.children[level - 1][p];
      if (kids.size() != 2) continue;
      const Match& m = chk_.matches.at({level - 1, p});
      for (int slot = 0; slot < 2; ++slot) {
        const Fp& f = m.used[slot];
        st.seams.push_back({idx_[level][kids[slot]], idx_[level][f.x], idx_[level][f.z]});
      }
    }
    return st;
  }

  // Node sequence of the walk through `start`, following footprints whose
  // predecessor and incoming type match the previous step.
  std::vector<int> follow(int level, const Fp& start) const {
    const auto& fp = chk_.fp[level];
    std::vector<std::vector<char>> used(fp.size());
    for (std::size_t p = 0; p < fp.size(); ++p) used[p].assign(fp[p].size(), 0);
    auto mark = [&](const Fp& f) {
      const auto& node = fp[f.y];
      for (std::size_t k = 0; k < node.size(); ++k) {
        if (!used[f.y][k] && node[k] == f) {
          used[f.y][k] = 1;
          return;
        }
      }
    };
    std::size_t total = 0;
    for (const auto& node : fp) total += node.size();
    std::vector<int> seq{start.y};
    mark(start);
    Fp cur = start;
    for (std::size_t step = 0; step < total; ++step) {
      if (cur.z == start.y && start.x == cur.y && start.in == cur.out) break;
      const auto& node = fp[cur.z];
      int pick = -1;
      for (std::size_t k = 0; k < node.size() && pick < 0; ++k) {
        if (!used[cur.z][k] && node[k].x == cur.y && node[k].in == cur.out) pick = static_cast<int>(k);
      }
      if (pick < 0) break;
      used[cur.z][pick] = 1;
      cur = node[pick];
      seq.push_back(cur.y);
    }
    return seq;
  }

  const Checker& chk_;
  const Graph& g_;
  const HistoryCollection& hc_;
  const Schedule& sch_;
  std::vector<std::vector<int>> idx_;  // level, node position -> stage vertex
};

}  // namespace

UnfoldingTrace reconstruct_trace(const Graph& g, const EmbeddingScheme& hstar,
                                 const std::vector<Avatar>& names, const HistoryCollection& hc) {
  const AvatarGraph hs = AvatarGraph::from_scheme(hstar, names);
  Checker chk(g, hs, hc.walk, hc);
  const ConsistencyReport rep = chk.run();
  for (const Violation& v : rep.violations) {
    if (v.condition == 1) throw GlobalInconsistency("structure", std::max(v.level, 0));
  }
  return Rebuilder(chk, g, hc).run(hstar, names);
}

}  // namespace bgpls
