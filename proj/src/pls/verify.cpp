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

#include "bgpls/pls.hpp"
#include "histories/rules.hpp"
#include "shape.hpp"

namespace bgpls {

const char* reason_name(Reason r) {
  switch (r) {
    case Reason::kAccept: return "accept";
    case Reason::kDecode: return "decode";
    case Reason::kNeighbourDecode: return "neighbour-decode";
    case Reason::kParameters: return "parameters";
    case Reason::kClaim: return "claim";
    case Reason::kPacking: return "packing";
    case Reason::kTree: return "tree";
    case Reason::kWalk: return "walk";
    case Reason::kChain: return "chain";
    case Reason::kPlanarity: return "planarity";
    case Reason::kFace: return "face";
    case Reason::kStructure: return "structure";
    case Reason::kRule: return "rule";
    case Reason::kImage: return "image";
  }
  return "?";
}

bool VerifierReport::accepted() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.accept(); });
}

int VerifierReport::rejecting() const {
  return static_cast<int>(std::count_if(verdicts.begin(), verdicts.end(),
                                        [](const Verdict& v) { return !v.accept(); }));
}

namespace {

using detail::NodeKey;
using detail::Shape;
using Fp = detail::FpT<NodeKey>;

struct Decoded {
  VertexId id = 0;
  NodeCertificate cert;
  Shape shape;
};

std::optional<Decoded> decode(VertexId id, const BitString& bits) {
  try {
    Decoded d;
    d.id = id;
    d.cert = decode_certificate(bits);
    d.shape = Shape::from_counts(d.cert.shape);
    return d;
  } catch (const DecodeError&) {
    return std::nullopt;
  }
}

bool is_path(TypeKind k) { return k == TypeKind::kPPrime || k == TypeKind::kPSecond; }

// A link record seen from one of its endpoints.
struct Rec {
  const LinkRecord* r = nullptr;
  NodeKey tail, head;
};

// Footprint of one occurrence of a node of the verifying vertex.
struct OccView {
  const Rec* in = nullptr;
  const Rec* out = nullptr;
  Fp fp() const { return {in->tail, out->tail, out->head, in->r->type, out->r->type}; }
};

class NodeVerifier {
 public:
  NodeVerifier(const Decoded& self, std::vector<const Decoded*> nbrs)
      : self_(self), nbrs_(std::move(nbrs)), gl_(self.cert.globals), sch_(gl_.schedule()) {
    shapes_[self.id] = &self.shape;
    for (const Decoded* w : nbrs_) shapes_[w->id] = &w->shape;
  }

  Verdict run(bool history) {
    for (auto phase : {&NodeVerifier::parameters, &NodeVerifier::packing,
                       &NodeVerifier::structure, &NodeVerifier::objects,
                       &NodeVerifier::planarity}) {
      if (Verdict v = (this->*phase)(); !v.accept()) return v;
    }
    if (!history) return {};
    if (Verdict v = rules(); !v.accept()) return v;
    return images();
  }

  // Everything below is valid once run() got past the structure phase.
  const std::vector<std::vector<OccView>>& occurrences() const { return occ_; }

  // Ctx of detail::match_split.
  NodeKey up(int, NodeKey k) const { return {k.first, shape(k.first).parent[k.second]}; }
  bool split(int level, NodeKey k) const {
    return shape(k.first).binary(up(level, k).second);
  }
  bool siblings(int level, NodeKey a, NodeKey b) const {
    return a != b && up(level, a) == up(level, b) && split(level, a);
  }

 private:
  static Verdict bad(Reason r, const std::string& what) { return Verdict::reject(r, what); }

  const Shape& shape(VertexId id) const { return *shapes_.at(id); }

  Verdict parameters() {
    for (const Decoded* w : nbrs_) {
      if (w->cert.globals != gl_) {
        return bad(Reason::kParameters, "globals differ from neighbour " + std::to_string(w->id));
      }
    }
    const Claim& c = gl_.claim;
    const int m = gl_.m, kp = gl_.kprime;
    bool fits;
    if (c.orientable) {
      fits = m == 0 && kp <= c.k;
    } else {
      fits = m > 0 ? m + 2 * kp <= c.k : (kp == 0 || 2 * kp + 1 <= c.k);
    }
    if (!fits) return bad(Reason::kClaim, "certified surface exceeds the claim");
    const auto slots = object_slots(sch_);
    for (std::size_t o = 0; o < slots.size(); ++o) {
      const ObjectParams& p = gl_.objects[o];
      const ObjectSlot& s = slots[o];
      if (s.kind == ObjectKind::kWalk) {
        if (p.length < 3) return bad(Reason::kWalk, "walk too short");
        continue;
      }
      switch (s.type.kind) {
        case TypeKind::kDPrime:
          if (p.length < 6 || p.length % 2 != 0) return bad(Reason::kChain, "doubled cycle length");
          break;
        case TypeKind::kCSecond: {
          const ObjectParams& q = gl_.objects[o - 1];
          if (p.length != q.length || p.length < 3 || p.offset >= p.length) {
            return bad(Reason::kChain, "cycle copy lengths");
          }
          break;
        }
        case TypeKind::kPSecond: {
          const ObjectParams& q = gl_.objects[o - 1];
          if (p.length != q.length || p.length < 1) return bad(Reason::kChain, "path copy lengths");
          if (p.length == 1 && p.root != q.root) {
            return bad(Reason::kChain, "single-vertex path copies differ in root");
          }
          break;
        }
        default:
          break;
      }
    }
    return {};
  }

  Verdict packing() {
    std::map<VertexId, const Decoded*> by_id;
    for (const Decoded* w : nbrs_) by_id[w->id] = w;
    std::map<VertexId, int> count;
    for (const EdgePayload& e : self_.cert.hosted) {
      auto it = by_id.find(e.other);
      if (it == by_id.end()) return bad(Reason::kPacking, "payload hosted for a non-neighbour");
      ++count[e.other];
      edges_.push_back({it->second, self_.id, &e});
    }
    for (const Decoded* w : nbrs_) {
      for (const EdgePayload& e : w->cert.hosted) {
        if (e.other != self_.id) continue;
        ++count[w->id];
        edges_.push_back({w, w->id, &e});
      }
      if (count[w->id] != 1) {
        return bad(Reason::kPacking, "edge to " + std::to_string(w->id) + " has " +
                                         std::to_string(count[w->id]) + " payloads");
      }
    }
    return {};
  }

  struct Edge {
    const Decoded* w;
    VertexId host;
    const EdgePayload* p;
  };

  Verdict structure() {
    const int n = self_.shape.size();
    occ_.assign(n, {});
    std::vector<std::vector<const Rec*>> tails(n), heads(n);
    recs_.reserve(64);
    for (const Edge& e : edges_) {
      const VertexId other = e.host == self_.id ? e.w->id : self_.id;
      const Shape& hs = shape(e.host);
      const Shape& os = shape(other);
      if (e.p->pairs.empty()) return bad(Reason::kStructure, "edge without a final-stage edge");
      for (const LeafPair& lp : e.p->pairs) {
        if (lp.host_leaf >= static_cast<int>(hs.leaves.size()) ||
            lp.other_leaf >= static_cast<int>(os.leaves.size())) {
          return bad(Reason::kStructure, "leaf pair names a missing leaf");
        }
      }
      for (const LinkRecord& l : e.p->links) {
        const VertexId t = l.from_host ? e.host : other;
        const VertexId h = l.from_host ? other : e.host;
        const Shape& ts = shape(t);
        const Shape& as = shape(h);
        if (l.from_node >= ts.size() || l.to_node >= as.size() ||
            ts.level[l.from_node] != l.level || as.level[l.to_node] != l.level) {
          return bad(Reason::kStructure, "link ends are not nodes of its level");
        }
        if (sch_.creation_level(l.type) > l.level) {
          return bad(Reason::kStructure, "edge type not yet created");
        }
        const int host_node = l.from_host ? l.from_node : l.to_node;
        const int other_node = l.from_host ? l.to_node : l.from_node;
        const bool stage = std::any_of(e.p->pairs.begin(), e.p->pairs.end(), [&](const LeafPair& lp) {
          return hs.ancestor(hs.leaves[lp.host_leaf], l.level) == host_node &&
                 os.ancestor(os.leaves[lp.other_leaf], l.level) == other_node;
        });
        if (!stage) return bad(Reason::kStructure, "link is not an edge of its stage");
        recs_.push_back({&l, {t, l.from_node}, {h, l.to_node}});
      }
    }
    for (const Rec& r : recs_) {
      if (r.tail.first == self_.id) tails[r.tail.second].push_back(&r);
      if (r.head.first == self_.id) heads[r.head.second].push_back(&r);
    }
    for (int y = 0; y < n; ++y) {
      if (tails[y].size() != heads[y].size()) {
        return bad(Reason::kStructure, "occurrence without a predecessor or successor");
      }
      const std::size_t c = tails[y].size();
      occ_[y].resize(c);
      for (const Rec* r : tails[y]) {
        const auto o = static_cast<std::size_t>(r->r->from_occ);
        if (o >= c || occ_[y][o].out) return bad(Reason::kStructure, "occurrence numbering");
        occ_[y][o].out = r;
      }
      for (const Rec* r : heads[y]) {
        const auto o = static_cast<std::size_t>(r->r->to_occ);
        if (o >= c || occ_[y][o].in) return bad(Reason::kStructure, "occurrence numbering");
        occ_[y][o].in = r;
      }
    }
    return {};
  }

  Verdict objects() {
    const auto slots = object_slots(sch_);
    for (std::size_t o = 0; o < slots.size(); ++o) {
      std::vector<std::pair<VertexId, TreeFragment>> nt;
      for (const Decoded* w : nbrs_) nt.emplace_back(w->id, w->cert.trees[o]);
      if (Verdict v = check_tree_fragment(self_.id, gl_.objects[o].root, self_.cert.trees[o], nt);
          !v.accept()) {
        return v;
      }
    }
    if (sch_.depth == 0) return {};
    const Shape& s = self_.shape;
    // The special walk.
    const std::uint64_t len = gl_.objects[0].length;
    int zeros = 0;
    for (int y : s.leaves) {
      for (const OccView& ov : occ_[y]) {
        const std::uint64_t p = ov.out->r->walk_pos;
        if (p >= len) return bad(Reason::kWalk, "walk position out of range");
        if ((ov.in->r->walk_pos + 1) % len != p) return bad(Reason::kWalk, "walk positions skip");
        zeros += p == 0;
      }
    }
    if (zeros != (self_.id == gl_.objects[0].root ? 1 : 0)) {
      return bad(Reason::kWalk, "walk start is not unique at the root");
    }
    // Typed chains at their creation levels.
    std::map<EdgeType, std::map<int, std::uint64_t>> pos;
    for (std::size_t o = 1; o < slots.size(); ++o) {
      const ObjectSlot& slot = slots[o];
      const ObjectParams& p = gl_.objects[o];
      auto& at = pos[slot.type];
      int zero = 0;
      for (int y = 0; y < s.size(); ++y) {
        if (s.level[y] != slot.level) continue;
        const Rec* in = nullptr;
        const Rec* out = nullptr;
        for (const OccView& ov : occ_[y]) {
          if (ov.out->r->type == slot.type) {
            if (out) return bad(Reason::kChain, "two successors on a chain");
            out = ov.out;
          }
          if (ov.in->r->type == slot.type) {
            if (in) return bad(Reason::kChain, "two predecessors on a chain");
            in = ov.in;
          }
        }
        if (!in && !out) continue;
        const std::uint64_t len_o = p.length;
        std::uint64_t here;
        if (!is_path(slot.type.kind)) {
          if (!in || !out) return bad(Reason::kChain, "cycle breaks");
          here = out->r->chain_pos;
          if (here >= len_o || (in->r->chain_pos + 1) % len_o != here) {
            return bad(Reason::kChain, "cycle positions skip");
          }
        } else {
          if (len_o == 1) return bad(Reason::kChain, "edges on a single-vertex path");
          if (out) {
            here = out->r->chain_pos;
            if (here >= len_o) return bad(Reason::kChain, "path position out of range");
            if (in ? in->r->chain_pos + 1 != here : here != 0) {
              return bad(Reason::kChain, "path positions skip");
            }
          } else {
            here = in->r->chain_pos + 1;
            if (here != len_o - 1) return bad(Reason::kChain, "path ends early");
          }
        }
        at[y] = here;
        zero += here == 0;
      }
      if (is_path(slot.type.kind) && p.length == 1) continue;
      if (zero != (self_.id == p.root ? 1 : 0)) {
        return bad(Reason::kChain, "chain start is not unique at the root");
      }
    }
    return pairing(slots, pos);
  }

  Verdict pairing(const std::vector<ObjectSlot>& slots,
                  std::map<EdgeType, std::map<int, std::uint64_t>>& pos) {
    const Shape& s = self_.shape;
    for (std::size_t o = 1; o < slots.size(); ++o) {
      const ObjectSlot& slot = slots[o];
      const ObjectParams& p = gl_.objects[o];
      const int level = slot.level;
      const std::uint64_t len = p.length;
      auto other = [&](int b, int a) { return s.child[b][0] == a ? s.child[b][1] : s.child[b][0]; };
      auto get = [&](EdgeType t, int y) -> std::optional<std::uint64_t> {
        const auto& m = pos[t];
        auto it = m.find(y);
        if (it == m.end()) return std::nullopt;
        return it->second;
      };
      std::vector<int> binary;
      for (int y = 0; y < s.size(); ++y) {
        if (s.level[y] == level - 1 && s.binary(y)) binary.push_back(y);
      }
      switch (slot.type.kind) {
        case TypeKind::kDPrime:
          for (int b : binary) {
            bool any = false;
            for (int a : s.child[b]) {
              if (auto t = get(slot.type, a)) {
                any = true;
                if (get(slot.type, other(b, a)) != (*t + len / 2) % len) {
                  return bad(Reason::kChain, "antipodal copies are not siblings");
                }
              }
            }
            if (!any) return bad(Reason::kChain, "split vertex off the doubled cycle");
          }
          break;
        case TypeKind::kCPrime:
        case TypeKind::kPPrime: {
          const bool path = slot.type.kind == TypeKind::kPPrime;
          const EdgeType t2{path ? TypeKind::kPSecond : TypeKind::kCSecond, slot.type.index};
          if (path && len == 1) {
            if (binary.size() != (self_.id == p.root ? 1u : 0u)) {
              return bad(Reason::kChain, "single-vertex path must split one vertex");
            }
            break;
          }
          const std::uint64_t off = path ? len - 1 : gl_.objects[o + 1].offset;
          auto mirror = [&](std::uint64_t t) { return (off + len - t) % len; };
          for (int b : binary) {
            bool any = false;
            for (int a : s.child[b]) {
              const int c = other(b, a);
              if (auto t = get(slot.type, a)) {
                any = true;
                if (get(t2, c) != mirror(*t)) return bad(Reason::kChain, "copies are not paired");
              }
              if (auto u = get(t2, a)) {
                if (get(slot.type, c) != mirror(*u)) return bad(Reason::kChain, "copies are not paired");
              }
            }
            if (!any) return bad(Reason::kChain, "split vertex off the chain");
          }
          break;
        }
        default:
          continue;
      }
      // Chain vertices come from split vertices.
      for (EdgeType t : {slot.type, EdgeType{slot.type.kind == TypeKind::kCPrime ? TypeKind::kCSecond
                                             : slot.type.kind == TypeKind::kPPrime ? TypeKind::kPSecond
                                                                                    : slot.type.kind,
                                             slot.type.index}}) {
        for (const auto& [y, t0] : pos[t]) {
          if (!s.binary(s.parent[y])) return bad(Reason::kChain, "chain vertex was not split");
        }
      }
    }
    return {};
  }

  Avatar avatar_of(NodeKey k) const { return {k.first, shape(k.first).leaf_rank[k.second] + 1}; }

  Verdict planarity() {
    const Shape& s = self_.shape;
    const auto& nc = self_.cert;
    std::map<VertexId, const Decoded*> by_id;
    for (const Decoded* w : nbrs_) by_id[w->id] = w;
    for (std::size_t rank = 0; rank < s.leaves.size(); ++rank) {
      PlanarVertexView view;
      view.key = {self_.id, static_cast<int>(rank) + 1};
      view.dist = nc.leaf_dist[rank];
      for (const Edge& e : edges_) {
        const bool host = e.host == self_.id;
        for (const LeafPair& lp : e.p->pairs) {
          const int mine = host ? lp.host_leaf : lp.other_leaf;
          if (mine != static_cast<int>(rank)) continue;
          const int theirs = host ? lp.other_leaf : lp.host_leaf;
          view.darts.push_back({{e.w->id, theirs + 1},
                                e.w->cert.leaf_dist[theirs],
                                host ? lp.out : lp.back,
                                host ? lp.back : lp.out});
        }
      }
      if (sch_.depth > 0) {
        view.face.emplace();
        auto find = [&](NodeKey k) {
          const Avatar a = avatar_of(k);
          for (std::size_t i = 0; i < view.darts.size(); ++i) {
            if (view.darts[i].target == a) return static_cast<int>(i);
          }
          return -1;
        };
        for (const OccView& ov : occ_[s.leaves[rank]]) {
          view.face->emplace_back(find(ov.in->tail), find(ov.out->head));
        }
      }
      if (Verdict v = check_planar_vertex(view, gl_.darts, gl_.planar_root); !v.accept()) return v;
    }
    return {};
  }

  std::vector<Fp> footprints(int y) const {
    std::vector<Fp> out;
    for (const OccView& ov : occ_[y]) out.push_back(ov.fp());
    std::sort(out.begin(), out.end());
    return out;
  }

  Verdict rules() {
    const Shape& s = self_.shape;
    for (int y = 0; y < s.size(); ++y) {
      if (s.kids[y] == 0) continue;
      const NodeKey key{self_.id, y};
      const auto want = footprints(y);
      const int child_level = s.level[y] + 1;
      if (s.kids[y] == 1) {
        std::vector<Fp> lifted;
        for (const Fp& f : footprints(s.child[y][0])) {
          lifted.push_back(detail::lift(*this, child_level, f, key));
        }
        std::sort(lifted.begin(), lifted.end());
        if (lifted != want) return bad(Reason::kRule, "vacancy does not forward");
        continue;
      }
      const auto m = detail::match_split(*this, sch_, child_level, key, footprints(s.child[y][0]),
                                         footprints(s.child[y][1]), want);
      if (m.count == 0) return bad(Reason::kRule, "no rule explains the split");
      if (m.count > 1) return bad(Reason::kRule, "two rule applications fit");
    }
    return {};
  }

  Verdict images() {
    using Step = std::tuple<NodeKey, NodeKey, EdgeType>;
    for (const Edge& e : edges_) {
      std::vector<std::vector<Step>> lifted(sch_.depth + 2), at(sch_.depth + 2);
      const VertexId other = e.host == self_.id ? e.w->id : self_.id;
      for (const LinkRecord& l : e.p->links) {
        const NodeKey t{l.from_host ? e.host : other, l.from_node};
        const NodeKey h{l.from_host ? other : e.host, l.to_node};
        at[l.level].emplace_back(t, h, l.type);
        if (sch_.creation_level(l.type) != l.level) {
          lifted[l.level].emplace_back(up(l.level, t), up(l.level, h), l.type);
        }
      }
      for (int level = 1; level <= sch_.depth; ++level) {
        std::sort(lifted[level].begin(), lifted[level].end());
        std::sort(at[level - 1].begin(), at[level - 1].end());
        if (lifted[level] != at[level - 1]) {
          return bad(Reason::kImage, "typed edges are not the image of the next level");
        }
      }
    }
    return {};
  }

  const Decoded& self_;
  std::vector<const Decoded*> nbrs_;
  const CertGlobals& gl_;
  Schedule sch_;
  std::map<VertexId, const Shape*> shapes_;
  std::vector<Edge> edges_;
  std::vector<Rec> recs_;
  std::vector<std::vector<OccView>> occ_;
};

// Histories, final stage and walk read off decoded certificates that passed
// every non-history phase.
struct Assembly {
  HistoryCollection hc;
  AvatarGraph hstar;
  std::vector<Avatar> walk;
};

Assembly assemble(const Graph& g, const std::vector<Decoded>& all,
                  const std::vector<NodeVerifier>& ver) {
  Assembly a;
  const CertGlobals& gl = all.front().cert.globals;
  a.hc.schedule = gl.schedule();
  const int depth = a.hc.schedule.depth;
  std::map<VertexId, int> index;
  for (int v = 0; v < g.n(); ++v) index[g.ids[v]] = v;
  auto set_of = [&](NodeKey k) {
    const Shape& s = all[index.at(k.first)].shape;
    AvatarSet out;
    for (int r : s.leaf_span(k.second)) out.push_back({k.first, r + 1});
    std::sort(out.begin(), out.end());
    return out;
  };
  // Stage adjacency from the final-stage edges.
  std::map<std::pair<int, NodeKey>, std::set<NodeKey>> adj;
  std::map<Avatar, std::set<Avatar>> leaf_adj;
  for (int v = 0; v < g.n(); ++v) {
    const Decoded& d = all[v];
    for (int y : d.shape.leaves) leaf_adj[{d.id, d.shape.leaf_rank[y] + 1}];
    for (const EdgePayload& e : d.cert.hosted) {
      const Shape& os = all[index.at(e.other)].shape;
      for (const LeafPair& lp : e.pairs) {
        const int a0 = d.shape.leaves[lp.host_leaf], b0 = os.leaves[lp.other_leaf];
        leaf_adj[{d.id, lp.host_leaf + 1}].insert({e.other, lp.other_leaf + 1});
        leaf_adj[{e.other, lp.other_leaf + 1}].insert({d.id, lp.host_leaf + 1});
        for (int level = 0; level <= depth; ++level) {
          const NodeKey x{d.id, d.shape.ancestor(a0, level)};
          const NodeKey y{e.other, os.ancestor(b0, level)};
          adj[{level, x}].insert(y);
          adj[{level, y}].insert(x);
        }
      }
    }
  }
  for (const auto& [v, ns] : leaf_adj) a.hstar.vertices.push_back(v);
  a.hstar.adj.resize(a.hstar.vertices.size());
  for (std::size_t i = 0; i < a.hstar.vertices.size(); ++i) {
    for (const Avatar& w : leaf_adj[a.hstar.vertices[i]]) a.hstar.adj[i].push_back(a.hstar.index_of(w));
    std::sort(a.hstar.adj[i].begin(), a.hstar.adj[i].end());
  }
  // Walk: leaf occurrences from position 0.
  std::map<std::pair<NodeKey, int>, std::pair<std::uint64_t, std::pair<NodeKey, int>>> step;
  for (int v = 0; v < g.n(); ++v) {
    const auto& occ = ver[v].occurrences();
    const Decoded& d = all[v];
    for (int y = 0; y < d.shape.size(); ++y) {
      if (d.shape.level[y] != depth) continue;
      for (std::size_t o = 0; o < occ[y].size(); ++o) {
        const LinkRecord& r = *occ[y][o].out->r;
        step[{{d.id, y}, static_cast<int>(o)}] = {r.walk_pos, {occ[y][o].out->head, r.to_occ}};
      }
    }
  }
  if (depth > 0) {
    std::optional<std::pair<NodeKey, int>> cur;
    for (const auto& [k, s] : step) {
      if (s.first == 0) cur = k;
    }
    for (std::size_t i = 0; cur && i < step.size(); ++i) {
      const Shape& s = all[index.at(cur->first.first)].shape;
      a.walk.push_back({cur->first.first, s.leaf_rank[cur->first.second] + 1});
      cur = step.at(*cur).second;
      auto next = step.find(*cur);
      if (next == step.end() || next->second.first == 0) break;
    }
  }
  for (int v = 0; v < g.n(); ++v) {
    const Decoded& d = all[v];
    History h;
    h.id = d.id;
    const auto& occ = ver[v].occurrences();
    for (int y = 0; y < d.shape.size(); ++y) {
      HistoryNode node;
      node.level = d.shape.level[y];
      node.s = set_of({d.id, y});
      for (int k = 0; k < d.shape.kids[y]; ++k) node.children.push_back(d.shape.child[y][k]);
      for (const NodeKey& w : adj[{node.level, NodeKey{d.id, y}}]) node.n.push_back(set_of(w));
      std::sort(node.n.begin(), node.n.end());
      for (const OccView& ov : occ[y]) {
        const Fp f = ov.fp();
        node.f.push_back({set_of(f.x), node.s, set_of(f.z), f.in, f.out});
      }
      std::sort(node.f.begin(), node.f.end());
      h.nodes.push_back(std::move(node));
    }
    a.hc.histories.push_back(std::move(h));
  }
  a.hc.walk = a.walk;
  return a;
}

Reason reason_of(const Violation& v) {
  if (v.condition == 2) return Reason::kWalk;
  if (v.code == "rule" || v.code == "ambiguous" || v.code == "root") return Reason::kRule;
  if (v.code == "image") return Reason::kImage;
  if (v.condition >= 3) return Reason::kChain;
  return Reason::kStructure;
}

}  // namespace

Verdict verify_node(VertexId id, const BitString& own,
                    const std::vector<std::pair<VertexId, BitString>>& neighbours) {
  auto self = decode(id, own);
  if (!self) return Verdict::reject(Reason::kDecode, "certificate does not decode");
  std::vector<Decoded> nbrs;
  for (const auto& [w, bits] : neighbours) {
    auto d = decode(w, bits);
    if (!d) return Verdict::reject(Reason::kNeighbourDecode, "certificate of " + std::to_string(w));
    nbrs.push_back(std::move(*d));
  }
  std::vector<const Decoded*> ptrs;
  for (const Decoded& d : nbrs) ptrs.push_back(&d);
  return NodeVerifier(*self, ptrs).run(true);
}

VerifierReport run_verifier(const Graph& g, const CertificateAssignment& a) {
  VerifierReport rep;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<std::pair<VertexId, BitString>> nbrs;
    for (int w : g.adj[v]) nbrs.emplace_back(g.ids[w], a.certs.at(w));
    rep.verdicts.push_back(verify_node(g.ids[v], a.certs.at(v), nbrs));
  }
  return rep;
}

CentralReport centralized_check(const Graph& g, const CertificateAssignment& a) {
  CentralReport rep;
  std::vector<Decoded> all;
  for (int v = 0; v < g.n(); ++v) {
    auto d = decode(g.ids[v], a.certs.at(v));
    if (!d) {
      rep.verdict = Verdict::reject(Reason::kDecode, "vertex " + std::to_string(g.ids[v]));
      return rep;
    }
    all.push_back(std::move(*d));
  }
  std::vector<NodeVerifier> ver;
  ver.reserve(g.n());
  for (int v = 0; v < g.n(); ++v) {
    std::vector<const Decoded*> nbrs;
    for (int w : g.adj[v]) nbrs.push_back(&all[w]);
    ver.emplace_back(all[v], nbrs);
    Verdict verdict = ver.back().run(false);
    if (!verdict.accept()) {
      verdict.detail = "vertex " + std::to_string(g.ids[v]) + ": " + verdict.detail;
      rep.verdict = verdict;
      return rep;
    }
  }
  const Assembly as = assemble(g, all, ver);
  rep.consistency = check_local_consistency(g, as.hstar, as.walk, as.hc);
  if (!rep.consistency.ok()) {
    const Violation& v = rep.consistency.violations.front();
    rep.verdict = Verdict::reject(reason_of(v), v.code + ": " + v.detail);
  }
  return rep;
}

}  // namespace bgpls
