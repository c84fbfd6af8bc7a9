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

#include "bgpls/pls.hpp"
#include "shape.hpp"

namespace bgpls {

const char* mutation_name(Mutation m) {
  switch (m) {
    case Mutation::kBitFlip: return "bit-flip";
    case Mutation::kFootprintSwap: return "footprint-swap";
    case Mutation::kChainReversal: return "chain-reversal";
    case Mutation::kDistanceCorruption: return "distance-corruption";
    case Mutation::kRootFork: return "root-fork";
    case Mutation::kAvatarRelabel: return "avatar-relabel";
    case Mutation::kPayloadDrop: return "payload-drop";
    case Mutation::kWalkSplice: return "walk-splice";
  }
  return "?";
}

int FuzzReport::accepted() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(),
                                        [](const FuzzCase& c) { return c.distributed_accept; }));
}

int FuzzReport::disagreements() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](const FuzzCase& c) {
    return c.distributed_accept != c.central_accept;
  }));
}

namespace {

using Certs = std::vector<NodeCertificate>;

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::optional<Certs> decode_all(const CertificateAssignment& a) {
  Certs out;
  try {
    for (const BitString& b : a.certs) out.push_back(decode_certificate(b));
  } catch (const DecodeError&) {
    return std::nullopt;
  }
  return out;
}

// Re-encodes, keeping payloads canonical; nullopt when a value no longer
// fits its field or nothing changed.
std::optional<CertificateAssignment> encode_all(Certs certs, const CertificateAssignment& honest) {
  CertificateAssignment out;
  try {
    for (NodeCertificate& c : certs) {
      std::sort(c.hosted.begin(), c.hosted.end(),
                [](const EdgePayload& a, const EdgePayload& b) { return a.other < b.other; });
      for (EdgePayload& e : c.hosted) {
        std::sort(e.pairs.begin(), e.pairs.end());
        std::sort(e.links.begin(), e.links.end());
        if (std::adjacent_find(e.pairs.begin(), e.pairs.end(), [](auto& x, auto& y) {
              return !(x < y) && !(y < x);
            }) != e.pairs.end() ||
            std::adjacent_find(e.links.begin(), e.links.end()) != e.links.end()) {
          return std::nullopt;
        }
      }
      out.certs.push_back(encode_certificate(c));
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  if (out == honest) return std::nullopt;
  return out;
}

// Every link record with the ID of its host.
struct LinkRef {
  int v;        // hosting vertex index
  int payload;
  int link;
};

std::vector<LinkRef> all_links(const Certs& c) {
  std::vector<LinkRef> out;
  for (std::size_t v = 0; v < c.size(); ++v) {
    for (std::size_t p = 0; p < c[v].hosted.size(); ++p) {
      for (std::size_t l = 0; l < c[v].hosted[p].links.size(); ++l) {
        out.push_back({static_cast<int>(v), static_cast<int>(p), static_cast<int>(l)});
      }
    }
  }
  return out;
}

LinkRecord& at(Certs& c, const LinkRef& r) { return c[r.v].hosted[r.payload].links[r.link]; }

VertexId tail_id(const Graph& g, const Certs& c, const LinkRef& r) {
  const EdgePayload& e = c[r.v].hosted[r.payload];
  return e.links[r.link].from_host ? g.ids[r.v] : e.other;
}

VertexId head_id(const Graph& g, const Certs& c, const LinkRef& r) {
  const EdgePayload& e = c[r.v].hosted[r.payload];
  return e.links[r.link].from_host ? e.other : g.ids[r.v];
}

void set_globals(Certs& c, const CertGlobals& gl) {
  for (NodeCertificate& n : c) n.globals = gl;
}

// Reverses the records of type t at its creation level, where they bound a
// face of their own, and renumbers positions so that every position check
// along the chain still passes.
void reverse_type(const Graph& g, Certs& c, EdgeType t) {
  const CertGlobals gl = c.front().globals;
  const Schedule sch = gl.schedule();
  const int created = sch.creation_level(t);
  const auto slots = object_slots(sch);
  std::size_t o = 0;
  while (o < slots.size() && !(slots[o].kind == ObjectKind::kChain && slots[o].type == t)) ++o;
  const std::uint64_t len = gl.objects[o].length;
  const bool path = t.kind == TypeKind::kPPrime || t.kind == TypeKind::kPSecond;
  std::optional<VertexId> new_root;
  for (const LinkRef& r : all_links(c)) {
    LinkRecord& l = at(c, r);
    if (l.type != t || l.level != created) continue;
    const VertexId head = head_id(g, c, r);
    std::swap(l.from_node, l.to_node);
    std::swap(l.from_occ, l.to_occ);
    l.from_host = !l.from_host;
    const std::uint64_t old_head = path ? l.chain_pos + 1 : (l.chain_pos + 1) % len;
    l.chain_pos = path ? len - 1 - old_head : (len - old_head) % len;
    if (l.chain_pos == 0) new_root = head;
  }
  CertGlobals ng = gl;
  if (path && new_root) {
    ng.objects[o].root = *new_root;
    const auto tree = tree_fragments(g, g.index_of(*new_root));
    for (std::size_t v = 0; v < c.size(); ++v) c[v].trees[o] = tree[v];
  }
  set_globals(c, ng);
}

std::optional<Certs> footprint_swap(const Graph& g, Certs c, std::mt19937_64& rng) {
  // Two out-records leaving one history node: exchange the occurrences they
  // leave from, so each footprint takes the other's successor.
  const auto links = all_links(c);
  if (links.empty()) return std::nullopt;
  std::map<std::tuple<VertexId, int, int>, std::vector<LinkRef>> by_node;
  for (const LinkRef& r : links) {
    const LinkRecord& l = c[r.v].hosted[r.payload].links[r.link];
    by_node[{tail_id(g, c, r), l.level, l.from_node}].push_back(r);
  }
  std::vector<std::vector<LinkRef>> groups;
  for (auto& [k, v] : by_node) {
    if (v.size() >= 2) groups.push_back(v);
  }
  if (groups.empty()) {
    // Every node has one occurrence: move a successor to another occurrence
    // index instead.
    LinkRecord& l = at(c, links[pick(rng, links.size())]);
    l.from_occ += 1;
    return c;
  }
  const auto& grp = groups[pick(rng, groups.size())];
  const std::size_t i = pick(rng, grp.size());
  std::size_t j = pick(rng, grp.size() - 1);
  if (j >= i) ++j;
  LinkRecord& a = at(c, grp[i]);
  LinkRecord& b = at(c, grp[j]);
  if (a.from_occ == b.from_occ) return std::nullopt;
  std::swap(a.from_occ, b.from_occ);
  return c;
}

std::optional<Certs> distance_corruption(Certs c, std::mt19937_64& rng) {
  const std::size_t v = pick(rng, c.size());
  NodeCertificate& n = c[v];
  const std::uint64_t delta = 1 + pick(rng, 2);
  auto bump = [&](std::uint64_t& d) { d = (d >= delta && pick(rng, 2)) ? d - delta : d + delta; };
  if (!n.trees.empty() && pick(rng, 2)) {
    bump(n.trees[pick(rng, n.trees.size())].dist);
  } else {
    bump(n.leaf_dist[pick(rng, n.leaf_dist.size())]);
  }
  return c;
}

std::optional<Certs> root_fork(const Graph& g, Certs c, std::mt19937_64& rng) {
  CertGlobals gl = c.front().globals;
  const std::size_t v = pick(rng, c.size());
  const VertexId id = g.ids[v];
  if (gl.objects.empty() || pick(rng, 4) == 0) {
    if (gl.planar_root.id == id) return std::nullopt;
    gl.planar_root = {id, 1};
    c[v].leaf_dist.front() = 0;
  } else {
    const std::size_t o = pick(rng, gl.objects.size());
    if (gl.objects[o].root == id) return std::nullopt;
    gl.objects[o].root = id;
    c[v].trees[o] = {id, 0};
  }
  set_globals(c, gl);
  return c;
}

std::optional<Certs> avatar_relabel(const Graph& g, Certs c, std::mt19937_64& rng) {
  std::vector<std::size_t> many;
  for (std::size_t v = 0; v < c.size(); ++v) {
    if (c[v].leaf_dist.size() >= 2) many.push_back(v);
  }
  if (many.empty()) {
    // Point one final-stage edge at an avatar that does not exist.
    std::vector<std::pair<std::size_t, std::size_t>> hosts;
    for (std::size_t v = 0; v < c.size(); ++v) {
      for (std::size_t p = 0; p < c[v].hosted.size(); ++p) hosts.emplace_back(v, p);
    }
    if (hosts.empty()) return std::nullopt;
    auto [v, p] = hosts[pick(rng, hosts.size())];
    auto& pairs = c[v].hosted[p].pairs;
    pairs[pick(rng, pairs.size())].other_leaf += 1;
    return c;
  }
  const std::size_t v = many[pick(rng, many.size())];
  const VertexId id = g.ids[v];
  const int leaves = static_cast<int>(c[v].leaf_dist.size());
  const int a = static_cast<int>(pick(rng, leaves));
  int b = static_cast<int>(pick(rng, leaves - 1));
  if (b >= a) ++b;
  auto swap_leaf = [&](int& leaf) {
    if (leaf == a) {
      leaf = b;
    } else if (leaf == b) {
      leaf = a;
    }
  };
  for (std::size_t u = 0; u < c.size(); ++u) {
    for (EdgePayload& e : c[u].hosted) {
      for (LeafPair& lp : e.pairs) {
        if (g.ids[u] == id) swap_leaf(lp.host_leaf);
        if (e.other == id) swap_leaf(lp.other_leaf);
      }
    }
  }
  return c;
}

std::optional<Certs> payload_drop(Certs c, std::mt19937_64& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> hosts;
  for (std::size_t v = 0; v < c.size(); ++v) {
    for (std::size_t p = 0; p < c[v].hosted.size(); ++p) hosts.emplace_back(v, p);
  }
  if (hosts.empty()) return std::nullopt;
  auto [v, p] = hosts[pick(rng, hosts.size())];
  EdgePayload& e = c[v].hosted[p];
  switch (pick(rng, 3)) {
    case 0:
      if (!e.links.empty()) {
        e.links.erase(e.links.begin() + static_cast<long>(pick(rng, e.links.size())));
        break;
      }
      [[fallthrough]];
    case 1:
      e.pairs.erase(e.pairs.begin() + static_cast<long>(pick(rng, e.pairs.size())));
      break;
    default:
      c[v].hosted.erase(c[v].hosted.begin() + static_cast<long>(p));
      break;
  }
  return c;
}

std::optional<Certs> walk_splice(Certs c, std::mt19937_64& rng) {
  const CertGlobals& gl = c.front().globals;
  const int depth = gl.schedule().depth;
  if (depth == 0) return std::nullopt;
  const std::uint64_t len = gl.objects.front().length;
  const std::uint64_t cut = 1 + pick(rng, len - 1);
  for (NodeCertificate& n : c) {
    for (EdgePayload& e : n.hosted) {
      for (LinkRecord& l : e.links) {
        if (l.level == depth && l.walk_pos >= cut) l.walk_pos -= cut;
      }
    }
  }
  return c;
}

std::optional<Certs> chain_reversal(const Graph& g, Certs c, std::mt19937_64& rng) {
  const auto slots = object_slots(c.front().globals.schedule());
  std::vector<EdgeType> types;
  for (const ObjectSlot& s : slots) {
    if (s.kind == ObjectKind::kChain) types.push_back(s.type);
  }
  if (types.empty()) return std::nullopt;
  const EdgeType t = types[pick(rng, types.size())];
  const int created = c.front().globals.schedule().creation_level(t);
  bool any = false;
  for (const LinkRef& r : all_links(c)) any = any || (at(c, r).type == t && at(c, r).level == created);
  if (!any) return std::nullopt;
  reverse_type(g, c, t);
  return c;
}

}  // namespace

std::optional<CertificateAssignment> mutate(const Graph& g, const CertificateAssignment& a,
                                            std::mt19937_64& rng, Mutation op) {
  if (op == Mutation::kBitFlip) {
    const std::size_t v = pick(rng, a.certs.size());
    if (a.certs[v].size() == 0) return std::nullopt;
    CertificateAssignment out = a;
    out.certs[v].flip(pick(rng, a.certs[v].size()));
    return out;
  }
  auto certs = decode_all(a);
  if (!certs || certs->empty()) return std::nullopt;
  std::optional<Certs> m;
  switch (op) {
    case Mutation::kFootprintSwap: m = footprint_swap(g, *certs, rng); break;
    case Mutation::kChainReversal: m = chain_reversal(g, *certs, rng); break;
    case Mutation::kDistanceCorruption: m = distance_corruption(*certs, rng); break;
    case Mutation::kRootFork: m = root_fork(g, *certs, rng); break;
    case Mutation::kAvatarRelabel: m = avatar_relabel(g, *certs, rng); break;
    case Mutation::kPayloadDrop: m = payload_drop(*certs, rng); break;
    case Mutation::kWalkSplice: m = walk_splice(*certs, rng); break;
    case Mutation::kBitFlip: break;
  }
  if (!m) return std::nullopt;
  return encode_all(std::move(*m), a);
}

std::optional<CertificateAssignment> klein_attack(const Graph& g, const CertificateAssignment& a) {
  auto certs = decode_all(a);
  if (!certs || certs->empty() || certs->front().globals.kprime == 0) return std::nullopt;
  reverse_type(g, *certs, {TypeKind::kCSecond, 1});
  return encode_all(std::move(*certs), a);
}

FuzzReport fuzz(const Graph& g, const CertificateAssignment& honest, int count, std::uint64_t seed) {
  FuzzReport rep;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    Mutation op = static_cast<Mutation>(i % kMutationCount);
    std::optional<CertificateAssignment> m;
    for (int attempt = 0; attempt < 16 && !m; ++attempt) m = mutate(g, honest, rng, op);
    if (!m) {
      op = Mutation::kBitFlip;
      while (!m) m = mutate(g, honest, rng, op);
    }
    const VerifierReport d = run_verifier(g, *m);
    const CentralReport c = centralized_check(g, *m);
    FuzzCase fc{op, d.accepted(), c.accept(), Reason::kAccept};
    for (const Verdict& v : d.verdicts) {
      if (!v.accept()) {
        fc.reason = v.reason;
        break;
      }
    }
    rep.cases.push_back(fc);
  }
  return rep;
}

}  // namespace bgpls
