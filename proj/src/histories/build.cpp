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
#include <functional>

#include "bgpls/histories.hpp"
#include "level_index.hpp"

namespace bgpls {

using detail::LevelIndex;
using detail::NodeRef;
using detail::primed;

namespace detail {

LevelIndex LevelIndex::build(const HistoryCollection& hc) {
  LevelIndex ix;
  auto ensure = [&](int level) {
    if (static_cast<int>(ix.nodes.size()) <= level) {
      ix.nodes.resize(level + 1);
      ix.owner.resize(level + 1);
      ix.parent.resize(level + 1);
      ix.children.resize(level + 1);
    }
  };
  for (int h = 0; h < static_cast<int>(hc.histories.size()); ++h) {
    const History& hist = hc.histories[h];
    if (hist.nodes.empty()) continue;
    std::function<void(int, int, int)> visit = [&](int i, int level, int up) {
      ensure(level);
      const int pos = static_cast<int>(ix.nodes[level].size());
      ix.nodes[level].push_back({h, i});
      ix.parent[level].push_back(up);
      ix.children[level].emplace_back();
      if (level > 0) ix.children[level - 1][up].push_back(pos);
      for (const Avatar& a : hist.nodes[i].s) ix.owner[level].emplace(a, pos);
      for (int c : hist.nodes[i].children) visit(c, level + 1, pos);
    };
    visit(0, 0, -1);
  }
  ensure(hc.schedule.depth);
  return ix;
}

int LevelIndex::find(int level, const AvatarSet& s, const HistoryCollection& hc) const {
  if (s.empty() || level < 0 || level >= static_cast<int>(owner.size())) return -1;
  auto it = owner[level].find(s.front());
  if (it == owner[level].end()) return -1;
  return node(level, it->second, hc).s == s ? it->second : -1;
}

}  // namespace detail

StepKind Schedule::kind(int level) const {
  if (level <= m) return StepKind::kCycleDouble;
  if (level <= m + kprime) return StepKind::kCycleDup;
  return StepKind::kPathDup;
}

int Schedule::index(int level) const {
  if (level <= m) return level;
  if (level <= m + kprime) return level - m;
  return level - m - kprime;
}

int Schedule::creation_level(EdgeType t) const {
  switch (t.kind) {
    case TypeKind::kDPrime:
      return t.index >= 1 && t.index <= m ? t.index : -1;
    case TypeKind::kCPrime:
    case TypeKind::kCSecond:
      return t.index >= 1 && t.index <= kprime ? m + t.index : -1;
    case TypeKind::kPPrime:
    case TypeKind::kPSecond:
      return t.index >= 1 && t.index <= paths() ? m + kprime + t.index : -1;
    case TypeKind::kNone:
      break;
  }
  return -1;
}

const History* HistoryCollection::find(VertexId id) const {
  auto it = std::lower_bound(histories.begin(), histories.end(), id,
                             [](const History& h, VertexId v) { return h.id < v; });
  return it != histories.end() && it->id == id ? &*it : nullptr;
}

namespace {

// stage[level][u] = node of stage vertex u.
using StageMap = std::vector<std::vector<NodeRef>>;

HistoryCollection build_impl(const UnfoldingTrace& t, StageMap& stage) {
  HistoryCollection hc;
  const int depth = t.depth();
  hc.schedule = {t.m, t.kprime, depth};
  stage.assign(depth + 1, {});
  for (int l = 0; l <= depth; ++l) stage[l].resize(t.embeddings[l].num_vertices());

  const EmbeddingScheme& g0 = t.embeddings.front();
  hc.hstar.resize(t.final_scheme().num_vertices());
  for (int v = 0; v < g0.num_vertices(); ++v) {
    History hist;
    hist.id = g0.id(v);
    int next_j = 1;
    const int h = static_cast<int>(hc.histories.size());
    std::function<int(int, int)> grow = [&](int level, int u) {
      const int i = static_cast<int>(hist.nodes.size());
      hist.nodes.emplace_back();
      hist.nodes[i].level = level;
      stage[level][u] = {h, i};
      if (level == depth) {
        Avatar a{hist.id, next_j++};
        hist.nodes[i].s = {a};
        hc.hstar[u] = a;
        return i;
      }
      AvatarSet s;
      for (int c : t.steps[level].splitting.alpha[u]) {
        int ci = grow(level + 1, c);
        hist.nodes[i].children.push_back(ci);
        const AvatarSet& cs = hist.nodes[ci].s;
        s.insert(s.end(), cs.begin(), cs.end());
      }
      std::sort(s.begin(), s.end());
      hist.nodes[i].s = std::move(s);
      return i;
    };
    grow(0, v);
    hc.histories.push_back(std::move(hist));
  }
  for (int l = 0; l <= depth; ++l) {
    const EmbeddingScheme& sc = t.embeddings[l];
    for (int u = 0; u < sc.num_vertices(); ++u) {
      NodeRef r = stage[l][u];
      HistoryNode& node = hc.histories[r.h].nodes[r.i];
      for (int w : sc.neighbours(u)) {
        NodeRef q = stage[l][w];
        node.n.push_back(hc.histories[q.h].nodes[q.i].s);
      }
      std::sort(node.n.begin(), node.n.end());
    }
  }
  for (int u : t.special_walk) hc.walk.push_back(hc.hstar[u]);
  return hc;
}

void sort_footprints(HistoryNode& node) {
  if (node.from.size() != node.f.size()) {
    std::sort(node.f.begin(), node.f.end());
    return;
  }
  std::vector<int> order(node.f.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return node.f[a] < node.f[b]; });
  std::vector<Footprint> f;
  std::vector<std::array<int, 2>> from;
  for (int i : order) {
    f.push_back(std::move(node.f[i]));
    from.push_back(node.from[i]);
  }
  node.f = std::move(f);
  node.from = std::move(from);
}

}  // namespace

HistoryCollection build_histories(const UnfoldingTrace& trace) {
  StageMap stage;
  return build_impl(trace, stage);
}

void seed_leaf_footprints(HistoryCollection& hc, const std::vector<Avatar>& walk) {
  const LevelIndex ix = LevelIndex::build(hc);
  const int depth = hc.schedule.depth;
  for (History& h : hc.histories) {
    for (HistoryNode& node : h.nodes) {
      node.f.clear();
      node.from.clear();
      node.rule = Rule::kNone;
      node.consumed = {-1, -1};
      node.swapped = false;
    }
  }
  const std::size_t len = walk.size();
  auto leaf = [&](const Avatar& a) -> HistoryNode& {
    auto it = ix.owner[depth].find(a);
    if (it == ix.owner[depth].end()) {
      throw WalkMismatch("walk visits an avatar outside every history");
    }
    return ix.node(depth, it->second, hc);
  };
  for (std::size_t i = 0; i < len; ++i) {
    const Avatar& x = walk[(i + len - 1) % len];
    const Avatar& z = walk[(i + 1) % len];
    leaf(x);
    leaf(z);
    HistoryNode& node = leaf(walk[i]);
    node.f.push_back({{x}, {walk[i]}, {z}, {}, {}});
  }
  for (History& h : hc.histories) {
    for (HistoryNode& node : h.nodes) std::sort(node.f.begin(), node.f.end());
  }
  hc.walk = walk;
}

namespace {

struct Choice {
  Rule rule = Rule::kNone;
  bool swapped = false;
  int i = -1, j = -1;
  std::vector<Footprint> produced;
};

// Rule applications are chosen node by node from the leaves up. Several
// footprint pairs can fit a split (a single-vertex path whose endpoint is
// visited more than once), so the filler backtracks over the alternatives
// and accepts a complete fill only when its typing passes the checker.
class Filler {
 public:
  explicit Filler(HistoryCollection& hc) : hc_(hc), ix_(LevelIndex::build(hc)) {
    for (int level = hc.schedule.depth - 1; level >= 0; --level) {
      for (std::size_t p = 0; p < ix_.nodes[level].size(); ++p) {
        order_.push_back({level, static_cast<int>(p)});
      }
    }
  }

  void run() {
    if (!search(0)) {
      throw NoRuleApplies(failure_.empty() ? "no consistent rule application" : failure_);
    }
  }

 private:
  static constexpr long kBudget = 20000;

  int pos_of(int level, const AvatarSet& a) const { return ix_.owner[level].at(a.front()); }
  int up(int level, const AvatarSet& a) const { return ix_.parent[level][pos_of(level, a)]; }
  const AvatarSet& parent_set(int level, const AvatarSet& a) const {
    return ix_.node(level - 1, up(level, a), hc_).s;
  }
  bool split(int level, const AvatarSet& a) const {
    return ix_.children[level - 1][up(level, a)].size() == 2;
  }
  bool siblings(int level, const AvatarSet& a, const AvatarSet& b) const {
    return a != b && up(level, a) == up(level, b) && split(level, a);
  }

  Footprint lift(int level, const Footprint& f, const AvatarSet& y) const {
    return {parent_set(level, f.x), y, parent_set(level, f.z), f.in, f.out};
  }

  // Products of `rule` on f1 (child 0) and f2 (child 1), children at
  // `level`; false when the pair lacks the rule's shape.
  bool apply(int level, Rule rule, bool swapped, const Footprint& f1, const Footprint& f2,
             const AvatarSet& y, std::vector<Footprint>& out) const {
    const AvatarSet &a = f1.x, &b = f1.z, &c = f2.x, &d = f2.z;
    out.clear();
    switch (rule) {
      case Rule::kElementary:
        return siblings(level, a, d) && siblings(level, b, c);
      case Rule::kSingleExtremity:
        if (!swapped) {
          if (!siblings(level, b, c) || split(level, a) || split(level, d)) return false;
          out.push_back({parent_set(level, a), y, parent_set(level, d), {}, {}});
        } else {
          if (!siblings(level, a, d) || split(level, b) || split(level, c)) return false;
          out.push_back({parent_set(level, c), y, parent_set(level, b), {}, {}});
        }
        return true;
      case Rule::kDoubleExtremity:
        if (split(level, a) || split(level, b) || split(level, c) || split(level, d)) return false;
        out.push_back({parent_set(level, a), y, parent_set(level, d), {}, {}});
        out.push_back({parent_set(level, c), y, parent_set(level, b), {}, {}});
        return true;
      case Rule::kCrossCap:
        return siblings(level, a, c) && siblings(level, b, d);
      case Rule::kNone:
        break;
    }
    return false;
  }

  std::vector<Choice> choices(int level, const HistoryNode& x, const HistoryNode& c0,
                              const HistoryNode& c1) const {
    std::vector<Rule> rules;
    switch (hc_.schedule.kind(level)) {
      case StepKind::kCycleDup:
        rules = {Rule::kElementary};
        break;
      case StepKind::kPathDup:
        rules = {Rule::kElementary, Rule::kSingleExtremity, Rule::kDoubleExtremity};
        break;
      case StepKind::kCycleDouble:
        rules = {Rule::kCrossCap};
        break;
    }
    std::vector<Choice> out;
    Choice ch;
    for (Rule rule : rules) {
      for (bool swapped : {false, true}) {
        if (swapped && rule != Rule::kSingleExtremity) continue;
        for (std::size_t i = 0; i < c0.f.size(); ++i) {
          if (i > 0 && c0.f[i] == c0.f[i - 1]) continue;
          for (std::size_t j = 0; j < c1.f.size(); ++j) {
            if (j > 0 && c1.f[j] == c1.f[j - 1]) continue;
            if (!apply(level, rule, swapped, c0.f[i], c1.f[j], x.s, ch.produced)) continue;
            ch.rule = rule;
            ch.swapped = swapped;
            ch.i = static_cast<int>(i);
            ch.j = static_cast<int>(j);
            out.push_back(ch);
          }
        }
      }
    }
    return out;
  }

  void reset(HistoryNode& x) const {
    x.f.clear();
    x.from.clear();
    x.rule = Rule::kNone;
    x.consumed = {-1, -1};
    x.swapped = false;
  }

  void fill(int level, HistoryNode& x, const std::array<const HistoryNode*, 2>& c,
            const Choice* ch) const {
    reset(x);
    if (ch) {
      x.rule = ch->rule;
      x.swapped = ch->swapped;
      x.consumed = {ch->i, ch->j};
      for (std::size_t p = 0; p < ch->produced.size(); ++p) {
        x.f.push_back(ch->produced[p]);
        x.from.push_back({-1, static_cast<int>(p)});
      }
    }
    for (int slot = 0; slot < 2 && c[slot]; ++slot) {
      for (std::size_t k = 0; k < c[slot]->f.size(); ++k) {
        if (static_cast<int>(k) == x.consumed[slot]) continue;
        x.f.push_back(lift(level, c[slot]->f[k], x.s));
        x.from.push_back({slot, static_cast<int>(k)});
      }
    }
    sort_footprints(x);
  }

  bool search(std::size_t at) {
    if (++spent_ > kBudget) {
      failure_ = "rule search budget exhausted";
      return false;
    }
    if (at == order_.size()) return complete();
    auto [level, p] = order_[at];
    HistoryNode& x = ix_.node(level, p, hc_);
    const auto& kids = ix_.children[level][p];
    std::array<const HistoryNode*, 2> c{nullptr, nullptr};
    for (std::size_t s = 0; s < kids.size() && s < 2; ++s) c[s] = &ix_.node(level + 1, kids[s], hc_);
    if (kids.size() != 2) {
      fill(level + 1, x, c, nullptr);
      if (level == 0 && !x.f.empty()) {
        failure_ = "footprints reach the root of vertex " + std::to_string(x.s.front().id);
        return false;
      }
      return search(at + 1);
    }
    const auto options = choices(level + 1, x, *c[0], *c[1]);
    if (options.empty()) {
      failure_ = "no rule applies at a split of vertex " + std::to_string(x.s.front().id) +
                 " on level " + std::to_string(level);
    }
    for (const Choice& ch : options) {
      fill(level + 1, x, c, &ch);
      if (level == 0 && !x.f.empty()) {
        failure_ = "footprints reach the root of vertex " + std::to_string(x.s.front().id);
        continue;
      }
      if (search(at + 1)) return true;
      if (spent_ > kBudget) return false;
    }
    return false;
  }

  // Types the candidate and checks it against the graphs its own roots and
  // leaves describe.
  bool complete() {
    if (ambiguous_ == 0) {
      for (auto [level, p] : order_) {
        if (ix_.children[level][p].size() != 2) continue;
        const auto& kids = ix_.children[level][p];
        const auto n = choices(level + 1, ix_.node(level, p, hc_), ix_.node(level + 1, kids[0], hc_),
                               ix_.node(level + 1, kids[1], hc_)).size();
        if (n > 1) ++ambiguous_;
      }
      if (ambiguous_ == 0) return true;
    }
    HistoryCollection typed = hc_;
    assign_types_downward(typed);
    const int depth = hc_.schedule.depth;
    Graph g;
    for (std::size_t p = 0; p < ix_.nodes[0].size(); ++p) {
      g.ids.push_back(ix_.node(0, static_cast<int>(p), hc_).s.front().id);
    }
    g.adj.resize(g.ids.size());
    for (std::size_t p = 0; p < ix_.nodes[0].size(); ++p) {
      for (const AvatarSet& nb : ix_.node(0, static_cast<int>(p), hc_).n) {
        g.adj[p].push_back(ix_.owner[0].at(nb.front()));
      }
      std::sort(g.adj[p].begin(), g.adj[p].end());
    }
    AvatarGraph hs;
    for (const auto& [a, pos] : ix_.owner[depth]) hs.vertices.push_back(a);
    hs.adj.resize(hs.vertices.size());
    for (std::size_t v = 0; v < hs.vertices.size(); ++v) {
      const HistoryNode& leaf = ix_.node(depth, ix_.owner[depth].at(hs.vertices[v]), hc_);
      for (const AvatarSet& nb : leaf.n) hs.adj[v].push_back(hs.index_of(nb.front()));
      std::sort(hs.adj[v].begin(), hs.adj[v].end());
    }
    if (check_local_consistency(g, hs, hc_.walk, typed).ok()) return true;
    failure_ = "no rule application passes the consistency check";
    return false;
  }

  HistoryCollection& hc_;
  LevelIndex ix_;
  std::vector<std::pair<int, int>> order_;  // internal nodes, deepest level first
  long spent_ = 0;
  int ambiguous_ = 0;
  std::string failure_;
};

}  // namespace

void fill_footprints_upward(HistoryCollection& hc) { Filler(hc).run(); }

void assign_types_downward(HistoryCollection& hc) {
  const LevelIndex ix = LevelIndex::build(hc);
  for (int level = 0; level < hc.schedule.depth; ++level) {
    const StepKind kind = hc.schedule.kind(level + 1);
    const int index = hc.schedule.index(level + 1);
    for (std::size_t p = 0; p < ix.nodes[level].size(); ++p) {
      const HistoryNode& x = ix.node(level, static_cast<int>(p), hc);
      const auto& kids = ix.children[level][p];
      std::array<HistoryNode*, 2> c{nullptr, nullptr};
      for (std::size_t s = 0; s < kids.size() && s < 2; ++s) {
        c[s] = &ix.node(level + 1, kids[s], hc);
      }
      std::array<const Footprint*, 2> products{nullptr, nullptr};
      for (std::size_t k = 0; k < x.f.size() && k < x.from.size(); ++k) {
        auto [slot, idx] = x.from[k];
        if (slot < 0) {
          products[idx] = &x.f[k];
          continue;
        }
        c[slot]->f[idx].in = x.f[k].in;
        c[slot]->f[idx].out = x.f[k].out;
      }
      if (x.rule == Rule::kNone) continue;
      Footprint& f0 = c[0]->f[x.consumed[0]];
      Footprint& f1 = c[1]->f[x.consumed[1]];
      switch (x.rule) {
        case Rule::kElementary:
        case Rule::kCrossCap:
          f0.in = f0.out = primed(kind, index, 0);
          f1.in = f1.out = primed(kind, index, 1);
          break;
        case Rule::kSingleExtremity:
          if (!x.swapped) {
            f0.in = products[0]->in;
            f0.out = primed(kind, index, 0);
            f1.in = primed(kind, index, 1);
            f1.out = products[0]->out;
          } else {
            f1.in = products[0]->in;
            f1.out = primed(kind, index, 1);
            f0.in = primed(kind, index, 0);
            f0.out = products[0]->out;
          }
          break;
        case Rule::kDoubleExtremity:
          f0.in = products[0]->in;
          f1.out = products[0]->out;
          f1.in = products[1]->in;
          f0.out = products[1]->out;
          break;
        case Rule::kNone:
          break;
      }
    }
  }
  // Typing changed the sort keys; re-sort bottom-up and follow the moves in
  // the parents' bookkeeping.
  for (int level = hc.schedule.depth; level >= 0; --level) {
    for (std::size_t p = 0; p < ix.nodes[level].size(); ++p) {
      HistoryNode& node = ix.node(level, static_cast<int>(p), hc);
      std::vector<int> order(node.f.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return node.f[a] < node.f[b]; });
      std::vector<int> moved(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) moved[order[i]] = static_cast<int>(i);
      sort_footprints(node);
      if (level == 0) continue;
      const int up = ix.parent[level][p];
      HistoryNode& parent = ix.node(level - 1, up, hc);
      const auto& kids = ix.children[level - 1][up];
      const int slot = kids[0] == static_cast<int>(p) ? 0 : 1;
      for (auto& fr : parent.from) {
        if (fr[0] == slot) fr[1] = moved[fr[1]];
      }
      if (parent.consumed[slot] >= 0) parent.consumed[slot] = moved[parent.consumed[slot]];
    }
  }
}

HistoryCollection certify_histories(const UnfoldingTrace& trace) {
  HistoryCollection hc = build_histories(trace);
  std::vector<Avatar> walk = hc.walk;
  seed_leaf_footprints(hc, walk);
  fill_footprints_upward(hc);
  assign_types_downward(hc);
  return hc;
}

namespace {

struct StageWalk {
  std::vector<int> corners;
  std::vector<std::array<int, 2>> src;  // per edge: walk and edge one level down
  std::vector<EdgeType> fresh;
};

std::vector<int> corner_cycle(const EmbeddingScheme& s, const BoundaryWalk& w, int first,
                              int second) {
  std::vector<int> c = w.corners;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] == first) {
      if (c[(i + 1) % n] == second) return c;
      break;
    }
  }
  c = reversed(s, w).corners;
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] == first && c[(i + 1) % n] == second) return c;
  }
  throw Error("merged face does not follow a face of the previous stage");
}

// Splits the merged face of a path duplication into the two faces it joined.
void unmerge(const UnfoldingTrace& t, int level, StageWalk& merged,
             std::vector<StageWalk>& below) {
  const SurgeryStep& st = t.steps[level - 1];
  const EmbeddingScheme& post = t.embeddings[level];
  const EmbeddingScheme& pre = t.embeddings[level - 1];
  const auto& co = st.corner_origin;
  const auto faces = trace_faces(pre);
  const auto cf = corner_faces(pre, faces);
  const auto& mc = merged.corners;
  const std::size_t len = mc.size();
  auto old = [&](std::size_t i) { return co[mc[i % len]] >= 0; };

  std::vector<int> face_ids;
  std::vector<int> walk_of(faces.size(), -1);
  std::vector<char> image(pre.num_darts(), 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (old(i)) image[co[mc[i]]] = 1;
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (!old(i) || !old(i + 1)) continue;
    const int f = cf[co[mc[i]]];
    if (walk_of[f] >= 0 || cf[co[mc[(i + 1) % len]]] != f) continue;
    walk_of[f] = static_cast<int>(below.size());
    face_ids.push_back(f);
    StageWalk w;
    w.corners = corner_cycle(pre, faces[f], co[mc[i]], co[mc[(i + 1) % len]]);
    below.push_back(std::move(w));
  }
  std::vector<int> cut(faces.size(), -1);
  for (int f : face_ids) {
    for (int c : below[walk_of[f]].corners) {
      if (!image[c]) cut[f] = c;
    }
  }
  const int n_pre = pre.num_vertices();
  const EdgeType p1{TypeKind::kPPrime, st.index};
  const EdgeType p2{TypeKind::kPSecond, st.index};
  merged.src.assign(len, {-1, -1});
  merged.fresh.assign(len, {});
  for (std::size_t i = 0; i < len; ++i) {
    const int a = mc[i];
    const int b = mc[(i + 1) % len];
    if (!old(i) && !old(i + 1)) {
      merged.fresh[i] = post.origin(a) < n_pre ? p1 : p2;
      continue;
    }
    const int f = cf[old(i) ? co[a] : co[b]];
    if (walk_of[f] < 0 || cut[f] < 0) throw Error("merged face lost one of its faces");
    const int start = old(i) ? co[a] : cut[f];
    const int stop = old(i + 1) ? co[b] : cut[f];
    const auto& wc = below[walk_of[f]].corners;
    const auto at = std::find(wc.begin(), wc.end(), start) - wc.begin();
    if (wc[(at + 1) % wc.size()] != stop) throw Error("merged face skips a corner");
    merged.src[i] = {walk_of[f], static_cast<int>(at)};
  }
}

}  // namespace

void trace_footprints(HistoryCollection& hc, const UnfoldingTrace& t) {
  StageMap stage;
  HistoryCollection fresh = build_impl(t, stage);
  const int depth = t.depth();
  for (History& h : fresh.histories) {
    for (HistoryNode& node : h.nodes) node.f.clear();
  }
  std::vector<std::vector<StageWalk>> walks(depth + 1);
  if (depth > 0) walks[depth].push_back({t.special_face.corners, {}, {}});
  for (int level = depth; level >= 1; --level) {
    const SurgeryStep& st = t.steps[level - 1];
    const int n_pre = t.embeddings[level - 1].num_vertices();
    const EmbeddingScheme& post = t.embeddings[level];
    for (StageWalk& w : walks[level]) {
      const std::size_t len = w.corners.size();
      bool created = false;
      for (int c : w.corners) created = created || st.corner_origin[c] < 0;
      if (!created) {
        StageWalk down;
        for (int c : w.corners) down.corners.push_back(st.corner_origin[c]);
        w.src.resize(len);
        w.fresh.assign(len, {});
        for (std::size_t i = 0; i < len; ++i) {
          w.src[i] = {static_cast<int>(walks[level - 1].size()), static_cast<int>(i)};
        }
        walks[level - 1].push_back(std::move(down));
        continue;
      }
      EdgeType type;
      switch (st.kind) {
        case StepKind::kCycleDup:
          type = {post.origin(w.corners[0]) < n_pre ? TypeKind::kCPrime : TypeKind::kCSecond,
                  st.index};
          break;
        case StepKind::kCycleDouble:
          type = {TypeKind::kDPrime, st.index};
          break;
        case StepKind::kPathDup:
          unmerge(t, level, w, walks[level - 1]);
          continue;
      }
      w.src.assign(len, {-1, -1});
      w.fresh.assign(len, type);
    }
  }
  if (!walks[0].empty()) throw Error("a special face survives to the input stage");

  std::vector<std::vector<std::vector<EdgeType>>> types(depth + 1);
  for (int level = 1; level <= depth; ++level) {
    const EmbeddingScheme& sc = t.embeddings[level];
    for (const StageWalk& w : walks[level]) {
      const std::size_t len = w.corners.size();
      std::vector<EdgeType> ty(len);
      for (std::size_t i = 0; i < len; ++i) {
        ty[i] = w.src[i][0] < 0 ? w.fresh[i] : types[level - 1][w.src[i][0]][w.src[i][1]];
      }
      for (std::size_t i = 0; i < len; ++i) {
        auto node_of = [&](std::size_t k) -> HistoryNode& {
          NodeRef r = stage[level][sc.origin(w.corners[k % len])];
          return fresh.histories[r.h].nodes[r.i];
        };
        HistoryNode& y = node_of(i);
        y.f.push_back({node_of(i + len - 1).s, y.s, node_of(i + 1).s, ty[(i + len - 1) % len],
                       ty[i]});
      }
      types[level].push_back(std::move(ty));
    }
  }
  for (History& h : fresh.histories) {
    for (HistoryNode& node : h.nodes) std::sort(node.f.begin(), node.f.end());
  }
  hc = std::move(fresh);
}

}  // namespace bgpls
