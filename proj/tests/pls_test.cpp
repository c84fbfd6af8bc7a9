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
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bgpls/embedding.hpp"
#include "bgpls/generate.hpp"
#include "bgpls/pls.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace bgpls {
namespace {

using testing::fixture;

const std::vector<std::string> kCorpus = {
    "k3_planar.emb", "k4_planar.emb",   "k4_torus.emb",      "k5_torus.emb", "k33_torus.emb",
    "k7_torus.emb",  "genus2_grid.emb", "k6_projective.emb", "p2_klein.emb", "p3_mixed.emb"};

Claim claim_of(const EmbeddingScheme& s) {
  const SurfaceKind k = euler_genus(s);
  return {k.genus, k.orientable};
}

std::vector<Avatar> plain_keys(const EmbeddingScheme& s) {
  std::vector<Avatar> key;
  for (VertexId id : s.ids()) key.push_back({id, 1});
  return key;
}

bool accepts_planarity(const EmbeddingScheme& s, const PlanarityLabels& l) {
  const auto views = planarity_views(s, l, nullptr);
  const Avatar root{s.id(l.root), 1};
  for (const auto& v : views) {
    if (!check_planar_vertex(v, l.darts, root).accept()) return false;
  }
  return true;
}

// --- bits --------------------------------------------------------------

TEST(Bits, RoundTrip) {
  BitWriter w;
  w.put(5, 3);
  w.flag(true);
  w.put(0, 7);
  w.put((1ULL << 40) + 17, 41);
  BitReader r(w.bits());
  EXPECT_EQ(r.get(3), 5u);
  EXPECT_TRUE(r.flag());
  EXPECT_EQ(r.get(7), 0u);
  EXPECT_EQ(r.get(41), (1ULL << 40) + 17);
  EXPECT_TRUE(r.done());
}

TEST(Bits, HexRoundTrip) {
  BitWriter w;
  for (int i = 0; i < 13; ++i) w.put(static_cast<std::uint64_t>(i * 7 % 16), 4);
  const BitString& b = w.bits();
  EXPECT_EQ(BitString::from_hex(b.hex(), b.size()), b);
}

TEST(Bits, ReadingPastTheEndThrows) {
  BitWriter w;
  w.put(3, 2);
  BitReader r(w.bits());
  EXPECT_THROW(r.get(3), DecodeError);
}

TEST(Bits, OverflowThrows) {
  BitWriter w;
  EXPECT_THROW(w.put(8, 3), Error);
}

TEST(Bits, BitsFor) {
  EXPECT_EQ(bits_for(0), 1);
  EXPECT_EQ(bits_for(1), 1);
  EXPECT_EQ(bits_for(2), 2);
  EXPECT_EQ(bits_for(255), 8);
  EXPECT_EQ(bits_for(256), 9);
}

// --- packing -----------------------------------------------------------

std::vector<int> star_hosts(VertexId centre) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 1; v <= 9; ++v) {
    if (v != centre) e.emplace_back(centre, v);
  }
  return edge_hosts(Graph::from_edges(testing::iota_ids(9), e));
}

TEST(Packing, StarLeavesHostTheirEdge) {
  const auto host = star_hosts(9);
  EXPECT_EQ(std::count(host.begin(), host.end(), 8), 0);
}

TEST(Packing, StarCentreWinsTheLastTieOnId) {
  // Once one leaf remains both ends have degree 1 and the lower ID goes first.
  const auto host = star_hosts(1);
  EXPECT_EQ(std::count(host.begin(), host.end(), 0), 1);
}

TEST(Packing, CompleteGraphLoadIsBoundedByDegeneracy) {
  const auto s = fixture("k7_torus.emb");
  const Graph g = s.graph();
  std::vector<int> load(g.n());
  for (int h : edge_hosts(g)) ++load[h];
  for (int l : load) EXPECT_LE(l, 6);
}

TEST(Packing, RecoveryOnRandomGraphs) {
  for (int seed = 0; seed < 100; ++seed) {
    const int genus = seed % 2;
    const int n = std::max(min_random_embedding_size(genus, true), 8 + seed % 20);
    const auto s = random_embedding(n, genus, true, seed);
    const Graph g = s.graph();
    const auto edges = g.edges();
    std::vector<BitString> node(g.n()), payload(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      BitWriter w;
      w.put(g.ids[edges[e].first], 16);
      w.put(g.ids[edges[e].second], 16);
      payload[e] = w.bits();
    }
    const auto packed = pack_line_certificates(g, node, payload);
    for (int v = 0; v < g.n(); ++v) {
      std::vector<std::pair<VertexId, const PackedNode*>> nb;
      for (int w : g.adj[v]) nb.emplace_back(g.ids[w], &packed[w]);
      const auto got = recover_edge_payloads(g.ids[v], packed[v], nb);
      ASSERT_TRUE(got.has_value()) << seed;
      ASSERT_EQ(got->size(), g.adj[v].size());
      for (const auto& [w, bits] : *got) {
        BitReader r(bits);
        const VertexId a = r.get(16), b = r.get(16);
        EXPECT_EQ(std::min(a, b), std::min(w, g.ids[v]));
        EXPECT_EQ(std::max(a, b), std::max(w, g.ids[v]));
      }
    }
  }
}

TEST(Packing, MissingPayloadIsDetected) {
  const Graph g = fixture("k4_planar.emb").graph();
  const auto edges = g.edges();
  std::vector<BitString> node(g.n()), payload(edges.size());
  auto packed = pack_line_certificates(g, node, payload);
  for (auto& p : packed) {
    if (!p.hosted.empty()) {
      p.hosted.pop_back();
      break;
    }
  }
  int failures = 0;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<std::pair<VertexId, const PackedNode*>> nb;
    for (int w : g.adj[v]) nb.emplace_back(g.ids[w], &packed[w]);
    failures += !recover_edge_payloads(g.ids[v], packed[v], nb).has_value();
  }
  EXPECT_EQ(failures, 2);
}

// --- spanning trees ----------------------------------------------------

Graph cycle_graph(int n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i + 1, (i + 1) % n + 1);
  return Graph::from_edges(testing::iota_ids(n), e);
}

std::vector<Verdict> tree_verdicts(const Graph& g, VertexId root,
                                   const std::vector<TreeFragment>& f) {
  std::vector<Verdict> out;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<std::pair<VertexId, TreeFragment>> nb;
    for (int w : g.adj[v]) nb.emplace_back(g.ids[w], f[w]);
    out.push_back(check_tree_fragment(g.ids[v], root, f[v], nb));
  }
  return out;
}

TEST(Tree, HonestCycleAccepts) {
  const Graph g = cycle_graph(10);
  for (const auto& v : tree_verdicts(g, g.ids[3], tree_fragments(g, 3))) EXPECT_TRUE(v.accept());
}

TEST(Tree, AbsentRootIsRejected) {
  // Every node claims a root that is not in the graph; distances must then
  // descend forever, so some node finds no closer neighbour.
  const Graph g = cycle_graph(10);
  auto f = tree_fragments(g, 0);
  f[0] = {g.ids[1], 1};
  for (int v = 1; v < g.n(); ++v) f[v].dist += 1;
  int rejects = 0;
  for (const auto& v : tree_verdicts(g, 99, f)) rejects += !v.accept();
  EXPECT_GT(rejects, 0);
}

TEST(Tree, CorruptedDistanceIsSeenByChild) {
  const Graph g = cycle_graph(10);
  auto f = tree_fragments(g, 0);
  f[2].dist += 2;  // child of 2 is 3
  const auto v = tree_verdicts(g, g.ids[0], f);
  EXPECT_FALSE(v[3].accept());
  EXPECT_EQ(v[3].reason, Reason::kTree);
}

TEST(Tree, ObjectFragmentsOfACycleAccept) {
  const Graph g = cycle_graph(7);
  const std::vector<int> obj{2, 3, 4, 5, 6, 0, 1};
  const auto f = tree_subcertificates(g, obj, true);
  for (int v = 0; v < g.n(); ++v) {
    std::vector<std::pair<VertexId, ObjectFragment>> nb;
    for (int w : g.adj[v]) nb.emplace_back(g.ids[w], f[w]);
    EXPECT_TRUE(check_object_fragment(g.ids[v], f[v], nb).accept()) << v;
  }
}

TEST(Tree, TwoCyclesClaimingOneObjectAreRejected) {
  // Two 5-cycles joined by the edge 1-6; the second copies the first's
  // positions and successors.
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i + 1, (i + 1) % 5 + 1);
    e.emplace_back(i + 6, (i + 1) % 5 + 6);
  }
  e.emplace_back(1, 6);
  const Graph g = Graph::from_edges(testing::iota_ids(10), e);
  auto f = tree_subcertificates(g, {0, 1, 2, 3, 4}, true);
  for (int i = 5; i < 10; ++i) {
    f[i].on = true;
    f[i].pos = f[i - 5].pos;
    f[i].pred = f[i - 5].pred + 5;
    f[i].succ = f[i - 5].succ + 5;
  }
  int rejects = 0;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<std::pair<VertexId, ObjectFragment>> nb;
    for (int w : g.adj[v]) nb.emplace_back(g.ids[w], f[w]);
    rejects += !check_object_fragment(g.ids[v], f[v], nb).accept();
  }
  EXPECT_GT(rejects, 0);
}

TEST(Tree, ObjectFragmentWithBrokenPositionIsRejected) {
  const Graph g = cycle_graph(7);
  const std::vector<int> obj{0, 1, 2, 3, 4, 5, 6};
  auto f = tree_subcertificates(g, obj, true);
  f[4].pos += 1;
  int rejects = 0;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<std::pair<VertexId, ObjectFragment>> nb;
    for (int w : g.adj[v]) nb.emplace_back(g.ids[w], f[w]);
    rejects += !check_object_fragment(g.ids[v], f[v], nb).accept();
  }
  EXPECT_GT(rejects, 0);
}

// --- planarity ---------------------------------------------------------

TEST(Planarity, K4FaceIsTheUncoveredSet) {
  const auto s = fixture("k4_planar.emb");
  for (int root = 0; root < s.num_vertices(); ++root) {
    for (int start : s.rotation(root)) {
      const auto l = planarity_labels(s, root, start, plain_keys(s));
      EXPECT_TRUE(accepts_planarity(s, l));
      std::set<int> got;
      for (auto [i, v] : uncovered_visits(s, l)) got.insert(v);
      const std::set<int> face{root, s.head(start), s.head(s.prev(start))};
      EXPECT_EQ(got, face) << root << " " << start;
    }
  }
}

TEST(Planarity, PlanarCorpusAcceptsFromEveryRoot) {
  for (const char* name : {"k3_planar.emb", "k4_planar.emb"}) {
    const auto s = fixture(name);
    for (int root = 0; root < s.num_vertices(); ++root) {
      const auto l = planarity_labels(s, root, s.rotation(root).front(), plain_keys(s));
      EXPECT_TRUE(accepts_planarity(s, l)) << name;
    }
  }
}

TEST(Planarity, K5FabricationsAreRejected) {
  const auto adj = testing::complete_adj(5);
  const auto ids = testing::iota_ids(5);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10000; ++trial) {
    auto rot = adj;
    for (auto& r : rot) std::shuffle(r.begin(), r.end(), rng);
    const auto s = EmbeddingScheme::from_rotation(ids, rot);
    const int root = static_cast<int>(rng() % 5);
    const auto& out = s.rotation(root);
    auto l = planarity_labels(s, root, out[rng() % out.size()], plain_keys(s));
    const int edits = static_cast<int>(rng() % 3);
    for (int e = 0; e < edits; ++e) {
      auto& d = l.dart[rng() % l.dart.size()];
      switch (rng() % 3) {
        case 0: d.idx = rng() % l.darts; break;
        case 1: d.cov = rng() % (l.darts + 1); break;
        default: d.parent = !d.parent;
      }
    }
    ASSERT_FALSE(accepts_planarity(s, l)) << trial;
  }
}

// Eight vertices, a non-BFS spanning tree and a start dart whose tour
// leaves exactly the visits {1, 4, 6, 10, 12, 13, 15} uncovered.
TEST(Planarity, TourFixtureUncoveredVisits) {
  const std::vector<std::vector<int>> rot_ids = {
      {5, 4, 6, 3}, {5, 7, 4}, {7, 5, 1, 6, 8}, {2, 7, 1},
      {3, 2, 1},    {3, 1, 8}, {3, 4, 2},       {6, 3}};
  const std::vector<int> parent_ids = {3, 5, 0, 2, 3, 3, 2, 6};
  std::vector<std::vector<int>> rot(8);
  std::vector<int> parent(8);
  for (int v = 0; v < 8; ++v) {
    for (int w : rot_ids[v]) rot[v].push_back(w - 1);
    parent[v] = parent_ids[v] - 1;
  }
  const auto s = EmbeddingScheme::from_rotation(testing::iota_ids(8), rot);
  ASSERT_EQ(euler_genus(s).genus, 0);
  const auto l = tour_labels(s, 2, s.find_dart(2, 6), parent);
  std::vector<int> visits, vertices;
  for (auto [i, v] : uncovered_visits(s, l)) {
    visits.push_back(i);
    vertices.push_back(static_cast<int>(s.id(v)));
  }
  EXPECT_EQ(visits, (std::vector<int>{1, 4, 6, 10, 12, 13, 15}));
  EXPECT_EQ(vertices, (std::vector<int>{3, 7, 4, 1, 6, 8, 3}));
}

// --- completeness ------------------------------------------------------

TEST(Completeness, CorpusAccepts) {
  for (const auto& name : kCorpus) {
    const auto s = fixture(name);
    const Graph g = s.graph();
    const auto a = prove(g, s, claim_of(s));
    EXPECT_TRUE(run_verifier(g, a).accepted()) << name;
    EXPECT_TRUE(centralized_check(g, a).accept()) << name;
  }
}

TEST(Completeness, RandomSurfaces) {
  for (int seed = 0; seed < 40; ++seed) {
    const bool orientable = seed % 2 == 0;
    const int genus = (seed / 2) % 3 + (orientable ? 0 : 1);
    const int n = std::max(min_random_embedding_size(genus, orientable), 10 + seed % 15);
    const auto s = random_embedding(n, genus, orientable, 1000 + seed);
    const Graph g = s.graph();
    const auto a = prove(g, s, claim_of(s));
    EXPECT_TRUE(run_verifier(g, a).accepted()) << seed;
  }
}

TEST(Completeness, TreeUsesPlanarityAlone) {
  std::vector<std::pair<VertexId, VertexId>> e = {{1, 2}, {2, 3}, {2, 4}, {4, 5}};
  const Graph g = Graph::from_edges(testing::iota_ids(5), e);
  std::vector<std::vector<int>> rot(5);
  for (int v = 0; v < 5; ++v) rot[v] = g.adj[v];
  const auto s = EmbeddingScheme::from_rotation(g.ids, rot);
  const auto a = prove(g, s, {0, true});
  EXPECT_TRUE(run_verifier(g, a).accepted());
  const auto c = decode_certificate(a.certs[0]);
  EXPECT_EQ(c.globals.m, 0);
  EXPECT_EQ(c.globals.kprime, 0);
  EXPECT_TRUE(c.globals.objects.empty());
}

// --- claims ------------------------------------------------------------

TEST(Claims, K5OnThePlaneIsRejectedByPlanarity) {
  const auto s = fixture("k5_torus.emb");
  const Graph g = s.graph();
  const auto r = run_verifier(g, prove(g, s, {0, true}));
  ASSERT_FALSE(r.accepted());
  for (const auto& v : r.verdicts) {
    if (!v.accept()) EXPECT_TRUE(v.reason == Reason::kPlanarity || v.reason == Reason::kFace);
  }
}

TEST(Claims, TorusUnderWeakerClaims) {
  const auto s = fixture("k5_torus.emb");
  const Graph g = s.graph();
  EXPECT_TRUE(run_verifier(g, prove(g, s, {2, true})).accepted());
  EXPECT_TRUE(run_verifier(g, prove(g, s, {3, false})).accepted());
  const auto r = run_verifier(g, prove(g, s, {2, false}));
  ASSERT_FALSE(r.accepted());
  for (const auto& v : r.verdicts) EXPECT_EQ(v.reason, Reason::kClaim);
}

TEST(Claims, ProjectivePlaneIsNotOrientable) {
  const auto s = fixture("k6_projective.emb");
  const Graph g = s.graph();
  EXPECT_TRUE(run_verifier(g, prove(g, s, {1, false})).accepted());
  EXPECT_FALSE(run_verifier(g, prove(g, s, {5, true})).accepted());
}

// --- soundness ---------------------------------------------------------

TEST(Soundness, EveryBitFlipIsRejected) {
  const auto s = fixture("k4_torus.emb");
  const Graph g = s.graph();
  const auto a = prove(g, s, claim_of(s));
  for (int v = 0; v < g.n(); ++v) {
    for (std::size_t i = 0; i < a.certs[v].size(); ++i) {
      auto b = a;
      b.certs[v].flip(i);
      ASSERT_FALSE(run_verifier(g, b).accepted()) << v << " bit " << i;
    }
  }
}

TEST(Soundness, EmptyCertificateIsADecodeError) {
  const auto s = fixture("k5_torus.emb");
  const Graph g = s.graph();
  auto a = prove(g, s, claim_of(s));
  a.certs[2] = BitString();
  const auto r = run_verifier(g, a);
  EXPECT_EQ(r.verdicts[2].reason, Reason::kDecode);
  for (int w : g.adj[2]) EXPECT_EQ(r.verdicts[w].reason, Reason::kNeighbourDecode);
}

TEST(Soundness, EachOperatorIsRejected) {
  for (const char* name : {"k5_torus.emb", "p3_mixed.emb"}) {
    const auto s = fixture(name);
    const Graph g = s.graph();
    const auto a = prove(g, s, claim_of(s));
    std::mt19937_64 rng(11);
    for (int op = 0; op < kMutationCount; ++op) {
      for (int t = 0; t < 20; ++t) {
        const auto b = mutate(g, a, rng, static_cast<Mutation>(op));
        if (!b) continue;
        EXPECT_NE(*b, a);
        EXPECT_FALSE(run_verifier(g, *b).accepted())
            << name << " " << mutation_name(static_cast<Mutation>(op));
        EXPECT_FALSE(centralized_check(g, *b).accept());
      }
    }
  }
}

TEST(Soundness, KleinAttackIsRejected) {
  for (const char* name : {"k4_torus.emb", "k7_torus.emb", "genus2_grid.emb", "p3_mixed.emb"}) {
    const auto s = fixture(name);
    const Graph g = s.graph();
    const auto a = prove(g, s, claim_of(s));
    const auto b = klein_attack(g, a);
    ASSERT_TRUE(b.has_value()) << name;
    EXPECT_FALSE(run_verifier(g, *b).accepted()) << name;
    EXPECT_FALSE(centralized_check(g, *b).accept()) << name;
  }
}

TEST(Soundness, KleinAttackNeedsADuplicatedCycle) {
  const auto s = fixture("p2_klein.emb");
  const Graph g = s.graph();
  EXPECT_FALSE(klein_attack(g, prove(g, s, claim_of(s))).has_value());
}

TEST(Soundness, FuzzAgreesWithCentralCheck) {
  for (const auto& name : kCorpus) {
    const auto s = fixture(name);
    const Graph g = s.graph();
    const auto a = prove(g, s, claim_of(s));
    const auto rep = fuzz(g, a, 200, 3);
    EXPECT_EQ(rep.accepted(), 0) << name;
    EXPECT_EQ(rep.disagreements(), 0) << name;
  }
}

// --- locality and encoding ---------------------------------------------

TEST(Locality, FarCertificatesDoNotMatter) {
  const auto s = fixture("genus2_grid.emb");
  const Graph g = s.graph();
  const auto a = prove(g, s, claim_of(s));
  std::mt19937_64 rng(5);
  for (int v = 0; v < g.n(); v += 3) {
    std::set<int> closed{v};
    for (int w : g.adj[v]) closed.insert(w);
    auto b = a;
    for (int u = 0; u < g.n(); ++u) {
      if (closed.count(u) || b.certs[u].size() == 0) continue;
      b.certs[u].flip(rng() % b.certs[u].size());
    }
    const auto before = run_verifier(g, a).verdicts[v];
    const auto after = run_verifier(g, b).verdicts[v];
    EXPECT_EQ(before.reason, after.reason) << v;
    EXPECT_EQ(before.detail, after.detail) << v;
  }
}

TEST(Encoding, DecodeEncodeIsIdentity) {
  for (const auto& name : kCorpus) {
    const auto s = fixture(name);
    const Graph g = s.graph();
    const auto a = prove(g, s, claim_of(s));
    for (const auto& bits : a.certs) {
      const auto c = decode_certificate(bits);
      EXPECT_EQ(encode_certificate(c), bits) << name;
      EXPECT_EQ(decode_certificate(encode_certificate(c)), c) << name;
    }
  }
}

TEST(Encoding, TrailingBitsAreRejected) {
  const auto s = fixture("k4_torus.emb");
  const Graph g = s.graph();
  auto bits = prove(g, s, claim_of(s)).certs[0];
  bits.push(false);
  EXPECT_THROW(decode_certificate(bits), DecodeError);
}

TEST(Encoding, ProverIsDeterministic) {
  const auto s = fixture("p3_mixed.emb");
  const Graph g = s.graph();
  EXPECT_EQ(prove(g, s, claim_of(s)), prove(g, s, claim_of(s)));
}

TEST(Dump, IsDeterministic) {
  const auto s = fixture("k5_torus.emb");
  const Graph g = s.graph();
  const auto a = prove(g, s, claim_of(s));
  std::ostringstream x, y;
  write_certificate_dump(x, g, a);
  write_certificate_dump(y, g, a);
  EXPECT_EQ(x.str(), y.str());
  EXPECT_FALSE(x.str().empty());
}

}  // namespace
}  // namespace bgpls
