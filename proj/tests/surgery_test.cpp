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
#include <map>
#include <set>
#include <string>

#include "bgpls/embedding.hpp"
#include "bgpls/embedding_io.hpp"
#include "bgpls/generate.hpp"
#include "bgpls/surgery.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace bgpls {
namespace {

using testing::cyclic_equal;
using testing::fixture;
using testing::Rotation;

std::vector<int> reversed_walk(std::vector<int> w) {
  std::reverse(w.begin(), w.end());
  return w;
}

bool same_face(const std::vector<int>& a, const std::vector<int>& b) {
  return cyclic_equal(a, b) || cyclic_equal(a, reversed_walk(b));
}

// Simple cycles of length >= 3, each listed once: starts at its minimum and
// the second vertex is smaller than the last.
std::vector<std::vector<int>> all_simple_cycles(const EmbeddingScheme& s) {
  std::vector<std::vector<int>> out;
  const int n = s.num_vertices();
  std::vector<int> path;
  std::vector<char> on(n, 0);
  std::function<void(int)> extend = [&](int v) {
    for (int w : s.neighbours(v)) {
      if (w == path[0] && path.size() >= 3 && path[1] < path.back()) out.push_back(path);
      if (w <= path[0] || on[w]) continue;
      on[w] = 1;
      path.push_back(w);
      extend(w);
      path.pop_back();
      on[w] = 0;
    }
  };
  for (int v = 0; v < n; ++v) {
    path = {v};
    on[v] = 1;
    extend(v);
    on[v] = 0;
  }
  return out;
}

struct OracleCut {
  int faces = 0;
  int vertices = 0;
  int edges = 0;
  bool connected = false;
};

// Duplicates a cycle of an all-positive rotation system by working on the
// rotations directly: copy 0 of v_i keeps the neighbours from v_{i+1} to
// v_{i-1}, copy 1 those from v_{i-1} to v_{i+1}.
OracleCut oracle_duplicate(const Rotation& rot, const std::vector<int>& cycle) {
  const int n = static_cast<int>(rot.size());
  const int len = static_cast<int>(cycle.size());
  std::map<int, int> at;
  for (int i = 0; i < len; ++i) at[cycle[i]] = i;
  auto side = [&](int v, int w) {  // copy of v holding the edge to w (w off the cycle edges)
    int i = at.at(v);
    const auto& r = rot[v];
    int out = static_cast<int>(std::find(r.begin(), r.end(), cycle[(i + 1) % len]) - r.begin());
    int pos = static_cast<int>(std::find(r.begin(), r.end(), w) - r.begin());
    int in = static_cast<int>(std::find(r.begin(), r.end(), cycle[(i + len - 1) % len]) - r.begin());
    int deg = static_cast<int>(r.size());
    return (pos - out + deg) % deg < (in - out + deg) % deg ? 0 : 1;
  };
  auto copy_index = [&](int v, int c) { return c == 0 ? v : n + at.at(v); };
  auto cycle_edge = [&](int v, int w) {
    if (!at.count(v) || !at.count(w)) return false;
    int d = (at[w] - at[v] + len) % len;
    return d == 1 || d == len - 1;
  };
  auto target = [&](int v, int c, int w) {
    if (!at.count(w)) return w;
    if (cycle_edge(v, w)) return copy_index(w, c);
    return copy_index(w, side(w, v));
  };
  Rotation out(n + len);
  for (int v = 0; v < n; ++v) {
    if (!at.count(v)) {
      for (int w : rot[v]) out[v].push_back(target(v, 0, w));
      continue;
    }
    int i = at[v];
    const auto& r = rot[v];
    const int deg = static_cast<int>(r.size());
    int o = static_cast<int>(std::find(r.begin(), r.end(), cycle[(i + 1) % len]) - r.begin());
    int in = static_cast<int>(std::find(r.begin(), r.end(), cycle[(i + len - 1) % len]) - r.begin());
    for (int p = o;; p = (p + 1) % deg) {
      out[copy_index(v, 0)].push_back(target(v, 0, r[p]));
      if (p == in) break;
    }
    for (int p = in;; p = (p + 1) % deg) {
      out[copy_index(v, 1)].push_back(target(v, 1, r[p]));
      if (p == o) break;
    }
  }
  OracleCut cut;
  cut.vertices = n + len;
  cut.edges = testing::count_edges(out);
  cut.faces = testing::oracle_face_count(out);
  std::vector<char> seen(out.size(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : out[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  cut.connected = reached == cut.vertices;
  return cut;
}

struct Counts {
  long v, e, f;
};

Counts counts(const EmbeddingScheme& s) {
  return {s.num_vertices(), s.num_edges(), static_cast<long>(trace_faces(s).size())};
}

// Parent of every final vertex at every stage, from the composed splitting.
std::vector<std::vector<int>> ancestry(const UnfoldingTrace& t) {
  std::vector<std::vector<int>> anc(t.embeddings.size());
  const int last = static_cast<int>(t.embeddings.size()) - 1;
  anc[last].resize(t.embeddings[last].num_vertices());
  for (std::size_t v = 0; v < anc[last].size(); ++v) anc[last][v] = static_cast<int>(v);
  for (int l = last; l >= 1; --l) {
    auto parent = t.steps[l - 1].splitting.parent_map(t.embeddings[l].num_vertices());
    anc[l - 1].resize(anc[last].size());
    for (std::size_t v = 0; v < anc[last].size(); ++v) anc[l - 1][v] = parent[anc[l][v]];
  }
  return anc;
}

std::vector<std::string> corpus_names() {
  return {"k3_planar.emb", "k4_planar.emb",   "k4_torus.emb",   "k5_torus.emb",
          "k33_torus.emb", "k7_torus.emb",    "genus2_grid.emb", "k6_projective.emb",
          "p2_klein.emb",  "p3_mixed.emb"};
}

TEST(DuplicateCycle, K5ExampleProducesTheTwoCycleCopies) {
  EmbeddingScheme s = fixture("k5_torus.emb");  // a..e = indices 0..4
  SurgeryResult r = duplicate_cycle(s, {0, 1, 2});
  const auto& alpha = r.splitting.alpha;
  std::vector<int> first = {alpha[0][0], alpha[1][0], alpha[2][0]};
  std::vector<int> second = {alpha[0][1], alpha[1][1], alpha[2][1]};
  ASSERT_EQ(r.face_walks.size(), 2u);
  EXPECT_TRUE(same_face(r.face_walks[0], first));
  EXPECT_TRUE(same_face(r.face_walks[1], second));
  EXPECT_EQ(r.scheme.num_vertices(), 8);
  SurfaceKind k = euler_genus(r.scheme);
  EXPECT_EQ(k.genus, 0);
  EXPECT_TRUE(k.orientable);
}

TEST(DuplicatePath, K5ExampleReproducesTheSpecialWalk) {
  EmbeddingScheme s = fixture("k5_torus.emb");
  SurgeryResult c = duplicate_cycle(s, {0, 1, 2});
  const auto& a1 = c.splitting.alpha;
  const int b1 = a1[1][0];  // b'
  const int c2 = a1[2][1];  // c''
  const int d = 3;
  auto faces = trace_faces(c.scheme);
  const BoundaryWalk* chi = nullptr;
  const BoundaryWalk* psi = nullptr;
  for (const auto& f : faces) {
    if (same_face(f.vertices, c.face_walks[1])) chi = &f;
    if (same_face(f.vertices, c.face_walks[0])) psi = &f;
  }
  ASSERT_TRUE(chi && psi);
  SurgeryResult p = duplicate_path(c.scheme, {c2, d, b1}, *chi, *psi);
  const auto& a2 = p.splitting.alpha;
  std::map<int, std::string> name = {{a1[0][0], "a'"},  {a1[0][1], "a''"}, {a1[1][1], "b''"},
                                     {a1[2][0], "c'"},  {4, "e"}};
  // Our copy 1 of the path is the first copy in the reference walk.
  for (auto [v, base] : {std::pair{c2, "c''"}, {d, "d"}, {b1, "b'"}}) {
    name[a2[v][1]] = std::string(base) + "1";
    name[a2[v][0]] = std::string(base) + "2";
  }
  std::vector<std::string> got;
  for (int v : p.face_walks[0]) got.push_back(name.at(v));
  const std::vector<std::string> want = {"b'1", "d1", "c''1", "a''", "b''",
                                         "c''2", "d2", "b'2", "a'", "c'"};
  bool match = false;
  for (int dir = 0; dir < 2 && !match; ++dir) {
    for (std::size_t r = 0; r < got.size() && !match; ++r) {
      match = got == want;
      std::rotate(got.begin(), got.begin() + 1, got.end());
    }
    std::reverse(got.begin(), got.end());
  }
  EXPECT_TRUE(match);
  EXPECT_EQ(euler_genus(p.scheme).genus, 0);
}

TEST(DuplicateCycle, AgreesWithRotationOracleOnEverySimpleCycle) {
  for (const char* name : {"k33_torus.emb", "k5_torus.emb", "k4_torus.emb", "k7_torus.emb"}) {
    EmbeddingScheme s = fixture(name);
    ASSERT_TRUE(s.all_positive());
    Rotation rot = testing::rotation_of(s);
    const long f0 = static_cast<long>(trace_faces(s).size());
    int accepted = 0;
    for (const auto& cycle : all_simple_cycles(s)) {
      OracleCut o = oracle_duplicate(rot, cycle);
      const bool good = o.connected && o.faces == f0 + 2;
      SCOPED_TRACE(std::string(name) + " cycle of length " + std::to_string(cycle.size()));
      if (good) {
        SurgeryResult r = duplicate_cycle(s, cycle);
        Counts c = counts(r.scheme);
        EXPECT_EQ(c.v, o.vertices);
        EXPECT_EQ(c.e, o.edges);
        EXPECT_EQ(c.f, o.faces);
        ++accepted;
      } else {
        EXPECT_THROW(duplicate_cycle(s, cycle), SeparatingCycle);
      }
    }
    EXPECT_GT(accepted, 0) << name;
  }
}

TEST(FindCycle, K33CycleLeavesConnectedPlanarGraph) {
  EmbeddingScheme s = fixture("k33_torus.emb");
  std::vector<int> c = find_non_separating_cycle(s, false);
  EXPECT_TRUE(c.size() == 4 || c.size() == 6);
  OracleCut o = oracle_duplicate(testing::rotation_of(s), c);
  EXPECT_TRUE(o.connected);
  EXPECT_EQ(o.vertices - o.edges + o.faces, 2);
  SurgeryResult r = duplicate_cycle(s, c);
  EXPECT_TRUE(r.scheme.graph().connected());
  EXPECT_EQ(euler_genus(r.scheme).genus, 0);
}

TEST(FindCycle, PlanarInputHasNoNonSeparatingCycle) {
  EXPECT_THROW(find_non_separating_cycle(fixture("k4_planar.emb"), false), NoCycleFound);
  EXPECT_THROW(find_non_separating_cycle(fixture("k4_torus.emb"), true), NoCycleFound);
}

TEST(FindCycle, ReturnedCyclesHaveTheRequestedSignature) {
  for (const char* name : {"k6_projective.emb", "p2_klein.emb", "p3_mixed.emb"}) {
    EmbeddingScheme s = fixture(name);
    EXPECT_EQ(cycle_sign(s, find_non_separating_cycle(s, true)), -1) << name;
  }
  for (const char* name : {"k4_torus.emb", "k7_torus.emb", "genus2_grid.emb", "p3_mixed.emb"}) {
    EmbeddingScheme s = fixture(name);
    if (!is_orientable(s)) continue;
    EXPECT_EQ(cycle_sign(s, find_non_separating_cycle(s, false)), 1) << name;
  }
}

TEST(Surgery, RejectsCyclesOfTheWrongKind) {
  EmbeddingScheme planar = fixture("k4_planar.emb");
  EXPECT_THROW(duplicate_cycle(planar, {0, 1, 2}), SeparatingCycle);
  EmbeddingScheme k6 = fixture("k6_projective.emb");
  std::vector<int> one_sided = find_non_separating_cycle(k6, true);
  EXPECT_THROW(duplicate_cycle(k6, one_sided), OneSidedCycle);
  EXPECT_THROW(double_cycle(planar, {0, 1, 2}), TwoSidedCycle);
}

TEST(DoubleCycle, K6ProjectiveBecomesASphere) {
  EmbeddingScheme s = fixture("k6_projective.emb");
  std::vector<int> d = find_non_separating_cycle(s, true);
  SurgeryResult r = double_cycle(s, d);
  SurfaceKind k = euler_genus(r.scheme);
  EXPECT_TRUE(k.orientable);
  EXPECT_EQ(k.genus, 0);
  ASSERT_EQ(r.face_walks.size(), 1u);
  EXPECT_EQ(r.face_walks[0].size(), 2 * d.size());
}

TEST(DoubleCycle, P3FixtureLosesOneCrossCap) {
  EmbeddingScheme s = fixture("p3_mixed.emb");
  SurfaceKind before = euler_genus(s);
  SurgeryResult r = double_cycle(s, find_non_separating_cycle(s, true));
  SurfaceKind after = euler_genus(r.scheme);
  EXPECT_EQ(after.euler_characteristic, before.euler_characteristic + 1);
  // Demigenus 2 is either the Klein bottle or the torus.
  EXPECT_TRUE((!after.orientable && after.genus == 2) || (after.orientable && after.genus == 1));
}

TEST(DuplicatePath, SingleVertexPathMergesTwoFaces) {
  EmbeddingScheme s = fixture("k4_planar.emb");
  auto faces = trace_faces(s);
  auto cf = corner_faces(s, faces);
  const auto& rot = s.rotation(0);
  int chi = rot[0];
  int psi = -1;
  for (int d : rot) {
    if (cf[d] != cf[chi]) psi = d;
  }
  ASSERT_GE(psi, 0);
  Counts before = counts(s);
  SurgeryResult r = duplicate_path(s, {0}, chi, psi);
  Counts after = counts(r.scheme);
  EXPECT_EQ(after.v - before.v, 1);
  EXPECT_EQ(after.e - before.e, 0);
  EXPECT_EQ(after.f - before.f, -1);
  EXPECT_EQ(euler_genus(r.scheme).genus, 0);
}

TEST(DuplicatePath, RejectsBadFacePairs) {
  EmbeddingScheme s = fixture("k4_planar.emb");
  auto faces = trace_faces(s);
  auto cf = corner_faces(s, faces);
  const auto& rot = s.rotation(0);
  EXPECT_THROW(duplicate_path(s, {0}, rot[0], rot[0]), SameFace);
  // Path 0-1-2 whose middle vertex touches every face around it.
  int psi = -1;
  for (int d : s.rotation(2)) {
    if (cf[d] != cf[rot[0]]) psi = d;
  }
  ASSERT_GE(psi, 0);
  EXPECT_THROW(duplicate_path(s, {0, 1, 2}, rot[0], psi), PathTouchesBoundary);
}

TEST(Unfold, EulerLedgerHoldsOverRandomSteps) {
  int steps = 0;
  int instance = 0;
  struct Surface {
    int genus;
    bool orientable;
  };
  const std::vector<Surface> surfaces = {{1, true},  {2, true},  {3, true}, {1, false},
                                         {2, false}, {3, false}, {4, false}};
  while (steps < 500) {
    const Surface sf = surfaces[instance % surfaces.size()];
    const int n = min_random_embedding_size(sf.genus, sf.orientable) + 4 + instance % 17;
    EmbeddingScheme s = random_embedding(n, sf.genus, sf.orientable, 1000 + instance);
    ++instance;
    UnfoldingTrace t = unfold(s);
    ASSERT_EQ(t.embeddings.size(), t.steps.size() + 1);
    const int k = sf.genus;
    if (sf.orientable) {
      EXPECT_EQ(t.m, 0);
      EXPECT_EQ(t.kprime, k);
    } else {
      EXPECT_EQ(t.m + 2 * t.kprime, k);
    }
    EXPECT_EQ(t.depth(), sf.orientable ? 3 * k - 1 : t.m + t.kprime + k - 1);
    for (int l = 0; l < t.depth(); ++l) {
      const SurgeryStep& st = t.steps[l];
      Counts a = counts(t.embeddings[l]);
      Counts b = counts(t.embeddings[l + 1]);
      const long len = static_cast<long>(st.object.size());
      Counts want{};
      switch (st.kind) {
        case StepKind::kCycleDup:
          want = {len, len, 2};
          break;
        case StepKind::kPathDup:
          want = {len, len - 1, -1};
          break;
        case StepKind::kCycleDouble:
          want = {len, len, 1};
          break;
      }
      EXPECT_EQ(b.v - a.v, want.v);
      EXPECT_EQ(b.e - a.e, want.e);
      EXPECT_EQ(b.f - a.f, want.f);
      SurfaceKind ka = euler_genus(t.embeddings[l]);
      SurfaceKind kb = euler_genus(t.embeddings[l + 1]);
      const long drop = st.kind == StepKind::kPathDup ? 0 : 1;
      const long da = ka.orientable ? 2 * ka.genus : ka.genus;
      const long db = kb.orientable ? 2 * kb.genus : kb.genus;
      EXPECT_EQ(st.kind == StepKind::kCycleDup ? (da - db) / 2 : da - db, drop);
      EXPECT_TRUE(t.embeddings[l + 1].graph().connected());
      EXPECT_LE(st.splitting.degree(), 2);
      ++steps;
    }
    SurfaceKind last = euler_genus(t.final_scheme());
    EXPECT_TRUE(last.orientable);
    EXPECT_EQ(last.genus, 0);
  }
}

TEST(Unfold, GenusZeroHasNoSteps) {
  UnfoldingTrace t = unfold(fixture("k4_planar.emb"));
  EXPECT_EQ(t.depth(), 0);
  EXPECT_TRUE(t.special_walk.empty());
  EXPECT_EQ(euler_genus(refold(t)).genus, 0);
}

TEST(Unfold, K5HasTwoStepsAndSpecialWalkOfLengthTen) {
  UnfoldingTrace t = unfold(fixture("k5_torus.emb"));
  ASSERT_EQ(t.depth(), 2);
  EXPECT_EQ(t.steps[0].kind, StepKind::kCycleDup);
  EXPECT_EQ(t.steps[1].kind, StepKind::kPathDup);
  EXPECT_EQ(t.special_walk.size(), 10u);
}

TEST(Unfold, GenusTwoFollowsTheSchedule) {
  UnfoldingTrace t = unfold(fixture("genus2_grid.emb"));
  ASSERT_EQ(t.depth(), 5);
  const std::vector<StepKind> kinds = {StepKind::kCycleDup, StepKind::kCycleDup,
                                       StepKind::kPathDup, StepKind::kPathDup,
                                       StepKind::kPathDup};
  std::vector<int> genus;
  for (int l = 0; l < t.depth(); ++l) {
    EXPECT_EQ(t.steps[l].kind, kinds[l]);
    genus.push_back(euler_genus(t.embeddings[l]).genus);
  }
  EXPECT_EQ(genus, (std::vector<int>{2, 1, 0, 0, 0}));
  EXPECT_EQ(euler_genus(t.final_scheme()).genus, 0);
}

TEST(Unfold, K33PathEndpointsDescendFromDifferentCycleVertices) {
  UnfoldingTrace t = unfold(fixture("k33_torus.emb"));
  ASSERT_EQ(t.depth(), 2);
  const SurgeryStep& path = t.steps[1];
  auto parent = t.steps[0].splitting.parent_map(t.embeddings[1].num_vertices());
  EXPECT_NE(parent[path.object.front()], parent[path.object.back()]);
}

TEST(Unfold, SpecialWalkCoversExactlyTheSplitDescendants) {
  for (const auto& name : corpus_names()) {
    UnfoldingTrace t = unfold(fixture(name));
    if (t.depth() == 0) continue;
    auto anc = ancestry(t);
    std::set<int> derived;
    for (int l = 0; l < t.depth(); ++l) {
      std::set<int> split(t.steps[l].object.begin(), t.steps[l].object.end());
      for (std::size_t v = 0; v < anc[l].size(); ++v) {
        if (split.count(anc[l][v])) derived.insert(static_cast<int>(v));
      }
    }
    std::set<int> on_walk(t.special_walk.begin(), t.special_walk.end());
    EXPECT_EQ(on_walk, derived) << name;
    int composed = 0;
    std::map<int, int> children;
    for (std::size_t v = 0; v < anc[0].size(); ++v) composed = std::max(composed, ++children[anc[0][v]]);
    EXPECT_LE(composed, 1 << t.depth());
  }
}

TEST(Refold, RoundTripPreservesGenusOnCorpus) {
  for (const auto& name : corpus_names()) {
    EmbeddingScheme s = fixture(name);
    UnfoldingTrace t = unfold(s);
    EmbeddingScheme back = refold(t);
    SurfaceKind a = euler_genus(s);
    SurfaceKind b = euler_genus(back);
    EXPECT_EQ(a.genus, b.genus) << name;
    EXPECT_EQ(a.orientable, b.orientable) << name;
    EXPECT_EQ(back.graph().adj, s.graph().adj) << name;
  }
}

TEST(Refold, RoundTripOnRandomInstances) {
  for (int seed = 0; seed < 40; ++seed) {
    int genus = 1 + seed % 3;
    bool orientable = seed % 2 == 0;
    EmbeddingScheme s = random_embedding(30 + seed, genus, orientable, seed);
    SurfaceKind back = euler_genus(refold(unfold(s)));
    EXPECT_EQ(back.genus, genus) << seed;
    EXPECT_EQ(back.orientable, orientable) << seed;
  }
}

std::string failing_condition(const UnfoldingTrace& t) {
  try {
    refold(t);
  } catch (const GlobalInconsistency& e) {
    return e.condition() + "@" + std::to_string(e.stage());
  }
  return "accepted";
}

TEST(Refold, ReversedFaceWalkGluesAKleinBottleAndIsRefused) {
  UnfoldingTrace t = unfold(fixture("k5_torus.emb"));
  auto& w = t.steps[0].face_walks[1];
  std::reverse(w.begin() + 1, w.end());
  EXPECT_EQ(failing_condition(t), "cycle-gluing@1");
}

TEST(Refold, PathVertexOffTheFaceIsRefused) {
  UnfoldingTrace t = unfold(fixture("k5_torus.emb"));
  SurgeryStep& st = t.steps[1];
  const int pre_n = static_cast<int>(st.splitting.alpha.size());
  int outsider = -1;
  for (int v = 0; v < pre_n && outsider < 0; ++v) {
    if (std::find(st.object.begin(), st.object.end(), v) == st.object.end()) outsider = v;
  }
  st.object[1] = outsider;
  EXPECT_EQ(failing_condition(t), "path-checking@2");
}

TEST(Refold, CorruptedSeamsAndSplittingsAreRefused) {
  const UnfoldingTrace honest = unfold(fixture("k7_torus.emb"));
  ASSERT_EQ(failing_condition(honest), "accepted");

  UnfoldingTrace t = honest;
  std::swap(t.steps[0].seams[0].before, t.steps[0].seams[0].after);
  EXPECT_NE(failing_condition(t), "accepted");

  t = honest;
  auto& alpha = t.steps[0].splitting.alpha;
  std::swap(alpha[t.steps[0].object[0]][1], alpha[t.steps[0].object[1]][1]);
  EXPECT_NE(failing_condition(t), "accepted");

  t = honest;
  t.special_walk.pop_back();
  EXPECT_EQ(failing_condition(t), "special-walk@2");

  t = honest;
  t.surface.genus = 2;
  EXPECT_EQ(failing_condition(t), "genus@0");
}

TEST(Refold, NonOrientableTracesRoundTripAfterEveryPrefixOfDoublings) {
  for (const char* name : {"k6_projective.emb", "p2_klein.emb", "p3_mixed.emb"}) {
    UnfoldingTrace t = unfold(fixture(name));
    EXPECT_GE(t.m, 1) << name;
    EXPECT_EQ(failing_condition(t), "accepted") << name;
  }
}

TEST(TraceText, IsDeterministicAndListsEveryStep) {
  for (const auto& name : corpus_names()) {
    EmbeddingScheme s = fixture(name);
    std::string a = format_trace(unfold(s));
    std::string b = format_trace(unfold(s));
    EXPECT_EQ(a, b) << name;
    UnfoldingTrace t = unfold(s);
    std::size_t count = 0;
    for (std::size_t p = a.find("\nstep "); p != std::string::npos; p = a.find("\nstep ", p + 1)) {
      ++count;
    }
    EXPECT_EQ(count, t.steps.size()) << name;
  }
  std::string k4 = format_trace(unfold(fixture("k4_torus.emb")));
  EXPECT_EQ(k4.substr(0, k4.find('\n')), "trace T1 m 0 kprime 1 steps 2");
  EXPECT_NE(k4.find("\nspecial "), std::string::npos);
}

}  // namespace
}  // namespace bgpls
