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

#include "bgpls/pls.hpp"

namespace bgpls {

namespace {

constexpr int kFieldWidth = 6;  // widths, claim, m, k'

int type_bits(int depth) { return bits_for(static_cast<std::uint64_t>(std::max(depth, 1))); }

void put_label(BitWriter& w, const DartLabel& l, int pw) {
  w.put(l.idx, pw);
  w.put(l.cov, pw);
  w.flag(l.parent);
}

DartLabel get_label(BitReader& r, int pw) {
  DartLabel l;
  l.idx = r.get(pw);
  l.cov = r.get(pw);
  l.parent = r.flag();
  return l;
}

}  // namespace

Schedule CertGlobals::schedule() const {
  Schedule s{m, kprime, 0};
  if (m + kprime > 0) s.depth = 2 * m + 3 * kprime - 1;
  return s;
}

std::vector<ObjectSlot> object_slots(const Schedule& s) {
  std::vector<ObjectSlot> out;
  if (s.depth == 0) return out;
  out.push_back({ObjectKind::kWalk, s.depth, {}});
  for (int level = 1; level <= s.depth; ++level) {
    const int i = s.index(level);
    switch (s.kind(level)) {
      case StepKind::kCycleDouble:
        out.push_back({ObjectKind::kChain, level, {TypeKind::kDPrime, i}});
        break;
      case StepKind::kCycleDup:
        out.push_back({ObjectKind::kChain, level, {TypeKind::kCPrime, i}});
        out.push_back({ObjectKind::kChain, level, {TypeKind::kCSecond, i}});
        break;
      case StepKind::kPathDup:
        out.push_back({ObjectKind::kChain, level, {TypeKind::kPPrime, i}});
        out.push_back({ObjectKind::kChain, level, {TypeKind::kPSecond, i}});
        break;
    }
  }
  return out;
}

BitString encode_certificate(const NodeCertificate& c) {
  const CertGlobals& gl = c.globals;
  const Schedule sch = gl.schedule();
  const auto slots = object_slots(sch);
  if (gl.objects.size() != slots.size() || c.trees.size() != slots.size()) {
    throw Error("object list does not match the schedule");
  }
  const int iw = gl.index_width, ow = gl.occ_width, pw = gl.pos_width, cw = gl.count_width;
  const int idw = gl.id_width;
  const int tb = type_bits(sch.depth);
  BitWriter w;
  for (int width : {gl.id_width, gl.index_width, gl.occ_width, gl.pos_width, gl.count_width}) {
    w.put(static_cast<std::uint64_t>(width), kFieldWidth);
  }
  w.put(static_cast<std::uint64_t>(gl.claim.k), kFieldWidth);
  w.flag(gl.claim.orientable);
  w.put(static_cast<std::uint64_t>(gl.m), kFieldWidth);
  w.put(static_cast<std::uint64_t>(gl.kprime), kFieldWidth);
  w.put(gl.darts, pw);
  w.put(gl.planar_root.id, idw);
  w.put(static_cast<std::uint64_t>(gl.planar_root.j - 1), iw);
  for (std::size_t o = 0; o < slots.size(); ++o) {
    w.put(gl.objects[o].root, idw);
    w.put(gl.objects[o].length, pw);
    if (slots[o].type.kind == TypeKind::kCSecond) {
      w.put(gl.objects[o].offset, pw);
    } else if (gl.objects[o].offset != 0) {
      throw Error("offset on an object without one");
    }
  }
  for (const TreeFragment& t : c.trees) {
    w.put(t.parent, idw);
    w.put(t.dist, idw);
  }
  // Shape: one bit per internal node, leaves are implied by the depth.
  std::size_t at = 0;
  std::function<void(int)> shape = [&](int level) {
    if (at >= c.shape.size()) throw Error("shape too short");
    const int kids = c.shape[at++];
    if (level == sch.depth) {
      if (kids != 0) throw Error("leaf with children");
      return;
    }
    if (kids != 1 && kids != 2) throw Error("internal node without one or two children");
    w.flag(kids == 2);
    for (int k = 0; k < kids; ++k) shape(level + 1);
  };
  shape(0);
  if (at != c.shape.size()) throw Error("shape too long");
  for (std::uint64_t d : c.leaf_dist) w.put(d, pw);
  w.put(c.hosted.size(), cw);
  for (const EdgePayload& e : c.hosted) {
    w.put(e.other, idw);
    w.put(e.pairs.size(), cw);
    for (const LeafPair& p : e.pairs) {
      w.put(static_cast<std::uint64_t>(p.host_leaf), iw);
      w.put(static_cast<std::uint64_t>(p.other_leaf), iw);
      put_label(w, p.out, pw);
      put_label(w, p.back, pw);
    }
    w.put(e.links.size(), cw);
    for (const LinkRecord& l : e.links) {
      w.flag(l.from_host);
      w.put(static_cast<std::uint64_t>(l.level), tb);
      w.put(static_cast<std::uint64_t>(l.from_node), iw);
      w.put(static_cast<std::uint64_t>(l.from_occ), ow);
      w.put(static_cast<std::uint64_t>(l.to_node), iw);
      w.put(static_cast<std::uint64_t>(l.to_occ), ow);
      w.put(static_cast<std::uint64_t>(l.type.kind), 3);
      w.put(static_cast<std::uint64_t>(l.type.index), tb);
      if (l.level == sch.depth) w.put(l.walk_pos, pw);
      if (sch.creation_level(l.type) == l.level) w.put(l.chain_pos, pw);
    }
  }
  return w.bits();
}

NodeCertificate decode_certificate(const BitString& bits) {
  BitReader r(bits);
  NodeCertificate c;
  CertGlobals& gl = c.globals;
  auto width = [&] {
    const int v = static_cast<int>(r.get(kFieldWidth));
    if (v < 1 || v > 62) throw DecodeError("field width out of range");
    return v;
  };
  gl.id_width = width();
  gl.index_width = width();
  gl.occ_width = width();
  gl.pos_width = width();
  gl.count_width = width();
  gl.claim.k = static_cast<int>(r.get(kFieldWidth));
  gl.claim.orientable = r.flag();
  gl.m = static_cast<int>(r.get(kFieldWidth));
  gl.kprime = static_cast<int>(r.get(kFieldWidth));
  const Schedule sch = gl.schedule();
  const auto slots = object_slots(sch);
  const int iw = gl.index_width, ow = gl.occ_width, pw = gl.pos_width, cw = gl.count_width;
  const int idw = gl.id_width;
  const int tb = type_bits(sch.depth);
  gl.darts = r.get(pw);
  gl.planar_root.id = r.get(idw);
  gl.planar_root.j = static_cast<int>(r.get(iw)) + 1;
  for (const ObjectSlot& slot : slots) {
    ObjectParams p;
    p.root = r.get(idw);
    p.length = r.get(pw);
    if (slot.type.kind == TypeKind::kCSecond) p.offset = r.get(pw);
    gl.objects.push_back(p);
  }
  for (std::size_t o = 0; o < slots.size(); ++o) {
    TreeFragment t;
    t.parent = r.get(idw);
    t.dist = r.get(idw);
    c.trees.push_back(t);
  }
  std::size_t leaves = 0;
  std::function<void(int)> shape = [&](int level) {
    if (c.shape.size() > (std::size_t{1} << iw)) throw DecodeError("history too large");
    if (level == sch.depth) {
      c.shape.push_back(0);
      ++leaves;
      return;
    }
    const int kids = r.flag() ? 2 : 1;
    c.shape.push_back(kids);
    for (int k = 0; k < kids; ++k) shape(level + 1);
  };
  shape(0);
  for (std::size_t l = 0; l < leaves; ++l) c.leaf_dist.push_back(r.get(pw));
  const auto hosted = r.get(cw);
  for (std::uint64_t h = 0; h < hosted; ++h) {
    EdgePayload e;
    e.other = r.get(idw);
    if (!c.hosted.empty() && c.hosted.back().other >= e.other) {
      throw DecodeError("hosted payloads out of order");
    }
    const auto pairs = r.get(cw);
    for (std::uint64_t p = 0; p < pairs; ++p) {
      LeafPair lp;
      lp.host_leaf = static_cast<int>(r.get(iw));
      lp.other_leaf = static_cast<int>(r.get(iw));
      lp.out = get_label(r, pw);
      lp.back = get_label(r, pw);
      if (!e.pairs.empty() && !(e.pairs.back() < lp)) throw DecodeError("leaf pairs out of order");
      e.pairs.push_back(lp);
    }
    const auto links = r.get(cw);
    for (std::uint64_t k = 0; k < links; ++k) {
      LinkRecord l;
      l.from_host = r.flag();
      l.level = static_cast<int>(r.get(tb));
      l.from_node = static_cast<int>(r.get(iw));
      l.from_occ = static_cast<int>(r.get(ow));
      l.to_node = static_cast<int>(r.get(iw));
      l.to_occ = static_cast<int>(r.get(ow));
      const auto kind = r.get(3);
      l.type.index = static_cast<int>(r.get(tb));
      if (kind == 0 || kind > static_cast<std::uint64_t>(TypeKind::kDPrime)) {
        throw DecodeError("unknown edge type");
      }
      l.type.kind = static_cast<TypeKind>(kind);
      if (l.level < 1 || l.level > sch.depth) throw DecodeError("link level out of range");
      const int created = sch.creation_level(l.type);
      if (created < 1) throw DecodeError("edge type outside the schedule");
      if (l.level == sch.depth) l.walk_pos = r.get(pw);
      if (created == l.level) l.chain_pos = r.get(pw);
      if (!e.links.empty() && !(e.links.back() < l)) throw DecodeError("links out of order");
      e.links.push_back(l);
    }
    c.hosted.push_back(std::move(e));
  }
  if (!r.done()) throw DecodeError("trailing bits");
  return c;
}

}  // namespace bgpls
