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
#include <set>
#include <tuple>

#include "bgpls/pls.hpp"
#include "shape.hpp"

namespace bgpls {

namespace {

using detail::NodeKey;

struct Occ {
  NodeKey node;
  int occ = 0;
};

struct Link {
  int level = 0;
  Occ tail, head;
  EdgeType type;
  std::uint64_t walk_pos = 0;
  std::uint64_t chain_pos = 0;
};

// Preorder position of every node of a history.
std::vector<int> preorder(const History& h) {
  std::vector<int> at(h.nodes.size(), -1);
  std::vector<int> stack{0};
  int next = 0;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    at[i] = next++;
    const auto& c = h.nodes[i].children;
    for (auto it = c.rbegin(); it != c.rend(); ++it) stack.push_back(*it);
  }
  return at;
}

class Prover {
 public:
  Prover(const Graph& g, const Claim& claim) : g_(g), claim_(claim) {}

  CertificateAssignment run(const EmbeddingScheme& s) {
    const SurfaceKind surface = euler_genus(s);
    if (claim_.k == 0 || surface.genus == 0) {
      planar_only(s, surface);
    } else {
      const UnfoldingTrace trace = unfold(s);
      hc_ = certify_histories(trace);
      hstar_ = trace.final_scheme();
      names_ = hc_.hstar;
      root_ = trace.special_walk.front();
      start_ = hstar_.find_dart(trace.special_walk[0], trace.special_walk[1]);
    }
    sch_ = hc_.schedule;
    index_histories();
    leaf_pairs();
    if (sch_.depth > 0) {
      link_walk();
      for (int level = 1; level < sch_.depth; ++level) link_level(level);
      objects();
    }
    return pack();
  }

 private:
  void planar_only(const EmbeddingScheme& s, const SurfaceKind& surface) {
    hstar_ = s;
    if (surface.orientable) {
      if (auto sw = orientation_switches(s)) {
        for (int v : *sw) hstar_.switch_vertex(v);
      }
    }
    hc_.schedule = {};
    for (int v = 0; v < g_.n(); ++v) {
      History h;
      h.id = g_.ids[v];
      HistoryNode root;
      root.s = {{g_.ids[v], 1}};
      h.nodes.push_back(root);
      hc_.histories.push_back(h);
      names_.push_back({g_.ids[v], 1});
    }
    root_ = 0;
    start_ = hstar_.degree(0) > 0 ? hstar_.rotation(0).front() : -1;
  }

  void index_histories() {
    const int n = g_.n();
    shapes_.resize(n);
    pre_.resize(n);
    for (int v = 0; v < n; ++v) {
      const History& h = hc_.histories[v];
      if (h.id != g_.ids[v]) throw Error("histories do not follow the graph");
      pre_[v] = preorder(h);
      std::vector<int> counts(h.nodes.size());
      for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        counts[pre_[v][i]] = static_cast<int>(h.nodes[i].children.size());
      }
      shapes_[v] = detail::Shape::from_counts(counts);
      for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        const HistoryNode& node = h.nodes[i];
        const int p = pre_[v][i];
        key_of_[{node.level, node.s}] = {h.id, p};
        if (node.children.empty()) {
          const int rank = shapes_[v].leaf_rank[p];
          if (node.s.size() != 1 || node.s.front().j != rank + 1) {
            throw Error("avatars are not numbered by leaf order");
          }
        }
      }
    }
  }

  int vertex(VertexId id) const { return g_.index_of(id); }

  const HistoryNode& node(const NodeKey& k) const {
    const int v = vertex(k.first);
    const auto& at = pre_[v];
    const auto it = std::find(at.begin(), at.end(), k.second);
    return hc_.histories[v].nodes[it - at.begin()];
  }

  NodeKey key(int level, const AvatarSet& s) const { return key_of_.at({level, s}); }

  void leaf_pairs() {
    labels_ = planarity_labels(hstar_, root_, start_, names_);
    hosts_ = edge_hosts(g_);
    const auto edges = g_.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      payload_index_[{edges[e].first, edges[e].second}] = static_cast<int>(e);
    }
    payloads_.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const int h = hosts_[e];
      payloads_[e].other = g_.ids[edges[e].first == h ? edges[e].second : edges[e].first];
    }
    for (int e = 0; e < hstar_.num_edges(); ++e) {
      int d = 2 * e;
      Avatar a = names_[hstar_.origin(d)], b = names_[hstar_.head(d)];
      if (a.id == b.id) throw Error("final stage joins two avatars of one vertex");
      const int pe = payload(vertex(a.id), vertex(b.id));
      if (g_.ids[hosts_[pe]] != a.id) {
        std::swap(a, b);
        d = EmbeddingScheme::twin(d);
      }
      payloads_[pe].pairs.push_back({a.j - 1, b.j - 1, labels_.dart[d],
                                     labels_.dart[EmbeddingScheme::twin(d)]});
    }
  }

  int payload(int u, int w) const {
    return payload_index_.at({std::min(u, w), std::max(u, w)});
  }

  Link make(int level, Occ tail, Occ head, EdgeType type) {
    Link l;
    l.level = level;
    l.tail = tail;
    l.head = head;
    l.type = type;
    return l;
  }

  // Leaf footprints in walk order, so that the leaf links close one cycle.
  void link_walk() {
    const auto& walk = hc_.walk;
    const std::size_t len = walk.size();
    const int depth = sch_.depth;
    std::map<NodeKey, std::vector<char>> used;
    std::vector<Occ> at(len);
    std::vector<EdgeType> out(len);
    for (std::size_t i = 0; i < len; ++i) {
      const NodeKey y = key(depth, {walk[i]});
      const HistoryNode& leaf = node(y);
      auto& u = used[y];
      u.resize(leaf.f.size(), 0);
      int pick = -1;
      for (std::size_t k = 0; k < leaf.f.size() && pick < 0; ++k) {
        const Footprint& f = leaf.f[k];
        if (u[k] || f.x != AvatarSet{walk[(i + len - 1) % len]} ||
            f.z != AvatarSet{walk[(i + 1) % len]}) {
          continue;
        }
        if (i > 0 && f.in != out[i - 1]) continue;
        pick = static_cast<int>(k);
      }
      if (pick < 0) throw Error("leaf footprints do not follow the walk");
      u[pick] = 1;
      at[i] = {y, pick};
      out[i] = leaf.f[pick].out;
    }
    if (node(at[0].node).f[at[0].occ].in != out[len - 1]) {
      throw Error("leaf footprint types do not close around the walk");
    }
    for (std::size_t i = 0; i < len; ++i) {
      Link l = make(depth, at[i], at[(i + 1) % len], out[i]);
      l.walk_pos = i;
      links_.push_back(l);
    }
  }

  void link_level(int level) {
    using Slot = std::tuple<NodeKey, NodeKey, EdgeType>;
    std::map<Slot, std::vector<Occ>> outs, ins;
    for (int v = 0; v < g_.n(); ++v) {
      const History& h = hc_.histories[v];
      for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        const HistoryNode& nd = h.nodes[i];
        if (nd.level != level) continue;
        const NodeKey y{h.id, pre_[v][i]};
        for (std::size_t k = 0; k < nd.f.size(); ++k) {
          const Footprint& f = nd.f[k];
          outs[{y, key(level, f.z), f.out}].push_back({y, static_cast<int>(k)});
          ins[{key(level, f.x), y, f.in}].push_back({y, static_cast<int>(k)});
        }
      }
    }
    for (const auto& [slot, tails] : outs) {
      const auto it = ins.find(slot);
      if (it == ins.end() || it->second.size() != tails.size()) {
        throw Error("footprints of neighbours disagree");
      }
      for (std::size_t k = 0; k < tails.size(); ++k) {
        links_.push_back(make(level, tails[k], it->second[k], std::get<2>(slot)));
      }
    }
  }

  // Positions on every typed chain at its creation level.
  void objects() {
    const auto slots = object_slots(sch_);
    std::map<std::pair<int, EdgeType>, std::map<NodeKey, std::uint64_t>> positions;
    for (const ObjectSlot& slot : slots) {
      if (slot.kind == ObjectKind::kWalk) {
        const NodeKey first = links_.front().tail.node;  // walk position 0
        object_root_.push_back(vertex(first.first));
        params_.push_back({first.first, hc_.walk.size(), 0});
        continue;
      }
      std::map<NodeKey, NodeKey> succ;
      std::set<NodeKey> heads;
      for (const Link& l : links_) {
        if (l.level != slot.level || l.type != slot.type) continue;
        if (!succ.emplace(l.tail.node, l.head.node).second) throw Error("chain branches");
        heads.insert(l.head.node);
      }
      const bool closed = slot.type.kind != TypeKind::kPPrime && slot.type.kind != TypeKind::kPSecond;
      std::vector<NodeKey> seq;
      if (succ.empty()) {
        if (closed) throw Error("empty typed cycle");
        seq.push_back(lone_split(slot.level));
      } else {
        NodeKey cur = succ.begin()->first;  // smallest key
        if (!closed) {
          for (const auto& [t, h] : succ) {
            if (!heads.count(t)) cur = t;
          }
        }
        const NodeKey first = cur;
        while (true) {
          seq.push_back(cur);
          auto it = succ.find(cur);
          if (it == succ.end() || it->second == first) break;
          cur = it->second;
          if (seq.size() > succ.size() + 1) throw Error("chain does not close");
        }
      }
      auto& pos = positions[{slot.level, slot.type}];
      for (std::size_t t = 0; t < seq.size(); ++t) pos[seq[t]] = t;
      ObjectParams p{seq.front().first, seq.size(), 0};
      if (slot.type.kind == TypeKind::kCSecond) {
        const auto& primed = positions.at({slot.level, {TypeKind::kCPrime, slot.type.index}});
        p.offset = offset(slot.level, primed, pos, seq.size());
      }
      object_root_.push_back(vertex(p.root));
      params_.push_back(p);
    }
    for (Link& l : links_) {
      if (sch_.creation_level(l.type) == l.level) {
        l.chain_pos = positions.at({l.level, l.type}).at(l.tail.node);
      }
    }
  }

  NodeKey lone_split(int level) const {
    for (int v = 0; v < g_.n(); ++v) {
      const detail::Shape& s = shapes_[v];
      for (int i = 0; i < s.size(); ++i) {
        if (s.level[i] == level - 1 && s.binary(i)) return {g_.ids[v], s.child[i][0]};
      }
    }
    throw Error("single-vertex path without a split vertex");
  }

  std::uint64_t offset(int level, const std::map<NodeKey, std::uint64_t>& primed,
                       const std::map<NodeKey, std::uint64_t>& second, std::uint64_t r) const {
    for (const auto& [k, t] : primed) {
      const detail::Shape& s = shapes_[vertex(k.first)];
      const int p = s.parent[k.second];
      const int other = s.child[p][0] == k.second ? s.child[p][1] : s.child[p][0];
      auto it = second.find({k.first, other});
      if (other >= 0 && it != second.end()) return (t + it->second) % r;
    }
    throw Error("cycle copies are not siblings at level " + std::to_string(level));
  }

  CertificateAssignment pack() {
    const int n = g_.n();
    for (const Link& l : links_) {
      const int u = vertex(l.tail.node.first), w = vertex(l.head.node.first);
      const int pe = payload(u, w);
      LinkRecord r;
      r.from_host = hosts_[pe] == u;
      r.level = l.level;
      r.from_node = l.tail.node.second;
      r.from_occ = l.tail.occ;
      r.to_node = l.head.node.second;
      r.to_occ = l.head.occ;
      r.type = l.type;
      r.walk_pos = l.walk_pos;
      r.chain_pos = l.chain_pos;
      payloads_[pe].links.push_back(r);
    }
    std::vector<NodeCertificate> certs(n);
    std::uint64_t max_nodes = 1, max_occ = 1, max_pos = labels_.darts, max_count = 1;
    for (const ObjectParams& p : params_) max_pos = std::max({max_pos, p.length, p.offset});
    for (auto d : labels_.dist) max_pos = std::max(max_pos, d);
    for (auto& p : payloads_) {
      std::sort(p.pairs.begin(), p.pairs.end());
      std::sort(p.links.begin(), p.links.end());
      max_count = std::max({max_count, std::uint64_t{p.pairs.size()}, std::uint64_t{p.links.size()}});
    }
    std::vector<std::vector<TreeFragment>> trees;
    for (int r : object_root_) trees.push_back(tree_fragments(g_, r));
    std::vector<int> final_index(0);
    std::map<Avatar, int> where;
    for (std::size_t u = 0; u < names_.size(); ++u) where[names_[u]] = static_cast<int>(u);
    for (int v = 0; v < n; ++v) {
      NodeCertificate& c = certs[v];
      const detail::Shape& s = shapes_[v];
      c.shape = s.kids;
      for (std::size_t rank = 0; rank < s.leaves.size(); ++rank) {
        c.leaf_dist.push_back(labels_.dist[where.at({g_.ids[v], static_cast<int>(rank) + 1})]);
      }
      for (auto& t : trees) c.trees.push_back(t[v]);
      max_nodes = std::max(max_nodes, std::uint64_t(s.size()));
      for (const HistoryNode& nd : hc_.histories[v].nodes) {
        max_occ = std::max(max_occ, std::uint64_t(nd.f.size()));
      }
    }
    for (std::size_t e = 0; e < payloads_.size(); ++e) {
      certs[hosts_[e]].hosted.push_back(payloads_[e]);
    }
    for (auto& c : certs) {
      std::sort(c.hosted.begin(), c.hosted.end(),
                [](const EdgePayload& a, const EdgePayload& b) { return a.other < b.other; });
      max_count = std::max(max_count, std::uint64_t(c.hosted.size()));
    }
    const std::uint64_t nn = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
    CertGlobals gl;
    gl.id_width = bits_for(std::max(nn, g_.ids.empty() ? 0 : g_.ids.back()));
    gl.index_width = bits_for(max_nodes - 1);
    gl.occ_width = bits_for(max_occ - 1);
    gl.pos_width = bits_for(max_pos);
    gl.count_width = bits_for(max_count);
    gl.claim = claim_;
    gl.m = sch_.m;
    gl.kprime = sch_.kprime;
    gl.darts = labels_.darts;
    gl.planar_root = names_[root_];
    gl.objects = params_;
    if (gl.schedule() != sch_) throw Error("schedule does not follow from m and k'");
    CertificateAssignment out;
    for (auto& c : certs) {
      c.globals = gl;
      out.certs.push_back(encode_certificate(c));
    }
    return out;
  }

  const Graph& g_;
  Claim claim_;
  HistoryCollection hc_;
  Schedule sch_;
  EmbeddingScheme hstar_;
  std::vector<Avatar> names_;
  int root_ = 0, start_ = -1;
  PlanarityLabels labels_;
  std::vector<detail::Shape> shapes_;
  std::vector<std::vector<int>> pre_;
  std::map<std::pair<int, AvatarSet>, NodeKey> key_of_;
  std::vector<int> hosts_;
  std::map<std::pair<int, int>, int> payload_index_;
  std::vector<EdgePayload> payloads_;
  std::vector<Link> links_;
  std::vector<int> object_root_;
  std::vector<ObjectParams> params_;
};

}  // namespace

CertificateAssignment prove(const Graph& g, const EmbeddingScheme& s, const Claim& claim) {
  return Prover(g, claim).run(s);
}

}  // namespace bgpls
