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
#include "bgpls/histories.hpp"
#include "bgpls/surgery.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace bgpls {
namespace {

using testing::fixture;

const std::vector<std::string> kCorpus = {
    "k3_planar.emb", "k4_planar.emb",   "k4_torus.emb",      "k5_torus.emb", "k33_torus.emb",
    "k7_torus.emb",  "genus2_grid.emb", "k6_projective.emb", "p2_klein.emb", "p3_mixed.emb"};

struct Instance {
  UnfoldingTrace trace;
  Graph g;
  AvatarGraph hs;
  HistoryCollection hc;

  explicit Instance(const EmbeddingScheme& s) : trace(unfold(s)) {
    g = trace.embeddings.front().graph();
    hc = certify_histories(trace);
    hs = AvatarGraph::from_scheme(trace.final_scheme(), hc.hstar);
  }

  ConsistencyReport check(const HistoryCollection& c) const {
    return check_local_consistency(g, hs, c.walk, c);
  }

  // The centralized reference: rebuild the unfolding and glue it back.
  bool refolds(const HistoryCollection& c) const {
    try {
      EmbeddingScheme back = refold(reconstruct_trace(g, trace.final_scheme(), c.hstar, c));
      return euler_genus(back) == trace.surface;
    } catch (const Error&) {
      return false;
    }
  }
};

std::string describe(const ConsistencyReport& r) {
  std::string out;
  for (const auto& v : r.violations) {
    out += std::to_string(v.condition) + ":" + v.code + " ";
  }
  return out;
}

const HistoryNode* leaf_of(const HistoryCollection& hc, Avatar a) {
  const History* h = hc.find(a.id);
  if (!h) return nullptr;
  for (const auto& x : h->nodes) {
    if (x.children.empty() && x.s == AvatarSet{a}) return &x;
  }
  return nullptr;
}

int count_leaves(const History& h) {
  return static_cast<int>(std::count_if(h.nodes.begin(), h.nodes.end(),
                                        [](const HistoryNode& x) { return x.children.empty(); }));
}

int binary_levels(const History& h) {
  std::set<int> levels;
  for (const auto& x : h.nodes) {
    if (x.children.size() == 2) levels.insert(x.level);
  }
  return static_cast<int>(levels.size());
}

TEST(Histories, CorpusAccepts) {
  for (const auto& name : kCorpus) {
    Instance in(fixture(name));
    EXPECT_TRUE(in.check(in.hc).ok()) << name << " " << describe(in.check(in.hc));
    EXPECT_TRUE(in.refolds(in.hc)) << name;
  }
}

TEST(Histories, PlanarCollectionIsEmpty) {
  Instance in(fixture("k4_planar.emb"));
  EXPECT_TRUE(in.hc.walk.empty());
  EXPECT_EQ(in.hc.schedule.depth, 0);
  for (const auto& h : in.hc.histories) {
    ASSERT_EQ(h.nodes.size(), 1u);
    EXPECT_TRUE(h.nodes[0].f.empty());
  }
  EXPECT_TRUE(in.check(in.hc).ok());
}

// The rule-based prover and the footprints read off the stage embeddings
// are built independently; they must coincide.
TEST(Histories, RulesMatchGeometry) {
  std::vector<EmbeddingScheme> cases;
  for (const auto& name : kCorpus) cases.push_back(fixture(name));
  for (int k = 1; k <= 3; ++k) {
    for (bool orientable : {true, false}) {
      for (int i = 0; i < 8; ++i) {
        int n = min_random_embedding_size(k, orientable) + i;
        cases.push_back(random_embedding(n, k, orientable, 7000 + 100 * k + i));
      }
    }
  }
  for (std::size_t c = 0; c < cases.size(); ++c) {
    UnfoldingTrace t = unfold(cases[c]);
    HistoryCollection geo;
    trace_footprints(geo, t);
    HistoryCollection rules = certify_histories(t);
    EXPECT_EQ(format_histories(rules), format_histories(geo)) << "case " << c;
    Graph g = t.embeddings.front().graph();
    AvatarGraph hs = AvatarGraph::from_scheme(t.final_scheme(), geo.hstar);
    EXPECT_TRUE(check_local_consistency(g, hs, geo.walk, geo).ok()) << "case " << c;
  }
}

TEST(Histories, NeverSplitVertexIsUnaryPath) {
  Instance in(fixture("k5_torus.emb"));
  const History* h = in.hc.find(5);
  ASSERT_NE(h, nullptr);
  EXPECT_EQ(static_cast<int>(h->nodes.size()), in.hc.schedule.depth + 1);
  for (const auto& x : h->nodes) {
    EXPECT_LE(x.children.size(), 1u);
    EXPECT_EQ(x.s, (AvatarSet{{5, 1}}));
    EXPECT_TRUE(x.f.empty());
  }
}

TEST(Histories, K5Shapes) {
  Instance in(fixture("k5_torus.emb"));
  ASSERT_EQ(in.hc.schedule.depth, 2);
  const History* b = in.hc.find(2);
  ASSERT_NE(b, nullptr);
  EXPECT_EQ(binary_levels(*b), 2);
  EXPECT_EQ(count_leaves(*b), 3);

  // d shows up twice on the walk, once per avatar.
  const History* d = in.hc.find(4);
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(count_leaves(*d), 2);
  for (int j : {1, 2}) {
    const HistoryNode* leaf = leaf_of(in.hc, {4, j});
    ASSERT_NE(leaf, nullptr);
    EXPECT_EQ(leaf->f.size(), 1u);
  }
}

TEST(Histories, LeafFootprintsFollowWalkOccurrences) {
  for (const auto& name : kCorpus) {
    Instance in(fixture(name));
    std::map<Avatar, std::size_t> seen;
    for (const Avatar& a : in.hc.walk) ++seen[a];
    for (const auto& h : in.hc.histories) {
      for (const auto& x : h.nodes) {
        if (!x.children.empty()) continue;
        EXPECT_EQ(x.f.size(), seen[x.s.front()]) << name;
      }
    }
  }
}

TEST(Histories, RepeatedAvatarGetsTwoFootprints) {
  bool found = false;
  for (const auto& name : kCorpus) {
    Instance in(fixture(name));
    for (const auto& h : in.hc.histories) {
      for (const auto& x : h.nodes) {
        if (x.children.empty() && x.f.size() >= 2) found = true;
      }
    }
  }
  for (int seed = 0; seed < 40 && !found; ++seed) {
    Instance in(random_embedding(min_random_embedding_size(2, true) + seed % 6, 2, true, 900 + seed));
    for (const auto& h : in.hc.histories) {
      for (const auto& x : h.nodes) {
        if (x.children.empty() && x.f.size() >= 2) found = true;
      }
    }
  }
  EXPECT_TRUE(found);
}

TEST(Histories, SeedRejectsForeignAvatar) {
  Instance in(fixture("k5_torus.emb"));
  HistoryCollection hc = build_histories(in.trace);
  std::vector<Avatar> walk = in.hc.walk;
  walk[0] = {99, 1};
  EXPECT_THROW(seed_leaf_footprints(hc, walk), WalkMismatch);
}

// Independent of the prover's bookkeeping: at a binary node the parent's
// footprint count is the children's minus two plus what the rule produced.
TEST(Histories, FootprintConservation) {
  for (const auto& name : kCorpus) {
    Instance in(fixture(name));
    for (const auto& h : in.hc.histories) {
      for (const auto& x : h.nodes) {
        if (x.children.size() != 2) continue;
        long delta = static_cast<long>(x.f.size()) -
                     static_cast<long>(h.nodes[x.children[0]].f.size() +
                                       h.nodes[x.children[1]].f.size());
        EXPECT_GE(delta, -2) << name;
        EXPECT_LE(delta, 0) << name;
        if (in.hc.schedule.kind(x.level + 1) == StepKind::kCycleDouble) {
          EXPECT_EQ(delta, -2) << name;
        }
      }
    }
  }
}

TEST(Histories, TypesAreTotalAndRespectLevels) {
  for (const auto& name : kCorpus) {
    Instance in(fixture(name));
    const Schedule& sc = in.hc.schedule;
    for (const auto& h : in.hc.histories) {
      for (const auto& x : h.nodes) {
        for (const auto& f : x.f) {
          for (EdgeType t : {f.in, f.out}) {
            ASSERT_NE(t.kind, TypeKind::kNone) << name;
            int created = sc.creation_level(t);
            ASSERT_GE(created, 1) << name;
            EXPECT_LE(created, x.level) << name << " " << type_name(t);
          }
        }
      }
    }
  }
}

TEST(Histories, TypeNamesRoundTrip) {
  for (const char* s : {"C'1", "C''2", "P'3", "P''1", "D'2", "-"}) {
    EXPECT_EQ(type_name(parse_type(s)), s);
  }
}

TEST(Histories, SerializationRoundTrip) {
  for (const auto& name : kCorpus) {
    Instance in(fixture(name));
    const std::string text = format_histories(in.hc);
    HistoryCollection back = parse_histories(text);
    EXPECT_EQ(format_histories(back), text) << name;
    EXPECT_EQ(back.walk, in.hc.walk);
    back.hstar = in.hc.hstar;
    EXPECT_TRUE(in.check(back).ok()) << name;
  }
}

// Exchanges one footprint of two vertices far apart on the walk.
TEST(Histories, SwappedLeafFootprintsBreakWalk) {
  Instance in(fixture("k7_torus.emb"));
  HistoryCollection hc = in.hc;
  const std::size_t len = hc.walk.size();
  Avatar a = hc.walk[0];
  Avatar b = hc.walk[len / 2];
  ASSERT_NE(a.id, b.id);
  auto* la = const_cast<HistoryNode*>(leaf_of(hc, a));
  auto* lb = const_cast<HistoryNode*>(leaf_of(hc, b));
  std::swap(la->f[0], lb->f[0]);
  ConsistencyReport r = in.check(hc);
  EXPECT_TRUE(r.has(2)) << describe(r);
  EXPECT_FALSE(in.refolds(hc));
}

// Reverses every footprint typed by the second copy of a duplicated cycle:
// gluing the two copies with equal orientations gives a Klein bottle.
void reverse_chain(HistoryCollection& hc, TypeKind kind, int index) {
  for (auto& h : hc.histories) {
    for (auto& x : h.nodes) {
      for (auto& f : x.f) {
        if ((f.in.kind == kind && f.in.index == index) ||
            (f.out.kind == kind && f.out.index == index)) {
          std::swap(f.x, f.z);
          std::swap(f.in, f.out);
        }
      }
      std::sort(x.f.begin(), x.f.end());
    }
  }
}

TEST(Histories, ReversedCycleChainIsRejected) {
  for (const char* name : {"k5_torus.emb", "k33_torus.emb", "genus2_grid.emb"}) {
    Instance in(fixture(name));
    HistoryCollection hc = in.hc;
    reverse_chain(hc, TypeKind::kCSecond, 1);
    ConsistencyReport r = in.check(hc);
    EXPECT_TRUE(r.has(4)) << name << " " << describe(r);
    EXPECT_FALSE(in.refolds(hc)) << name;
  }
}

// Footprint-level mutations of an honest collection.
class Mutator {
 public:
  explicit Mutator(std::uint64_t seed) : rng_(seed) {}

  // Returns the operator applied, or -1 when none was applicable.
  int apply(HistoryCollection& hc) {
    std::vector<HistoryNode*> with_f, all;
    for (auto& h : hc.histories) {
      for (auto& x : h.nodes) {
        all.push_back(&x);
        if (!x.f.empty()) with_f.push_back(&x);
      }
    }
    if (with_f.empty()) return -1;
    const int op = pick(8);
    HistoryNode& x = *with_f[pick(with_f.size())];
    Footprint& f = x.f[pick(x.f.size())];
    switch (op) {
      case 0: {  // swap footprints between two nodes
        HistoryNode& y = *with_f[pick(with_f.size())];
        std::swap(f, y.f[pick(y.f.size())]);
        std::sort(y.f.begin(), y.f.end());
        break;
      }
      case 1:  // reverse one footprint
        std::swap(f.x, f.z);
        std::swap(f.in, f.out);
        break;
      case 2: {  // retype one edge
        EdgeType t = random_type(hc.schedule);
        (pick(2) ? f.in : f.out) = t;
        break;
      }
      case 3:  // move X or Z to another neighbour
        if (x.n.empty()) return -1;
        (pick(2) ? f.x : f.z) = x.n[pick(x.n.size())];
        break;
      case 4:  // drop a footprint
        x.f.erase(x.f.begin() + static_cast<long>(&f - x.f.data()));
        break;
      case 5: {  // duplicate a footprint somewhere else
        HistoryNode& y = *all[pick(all.size())];
        y.f.push_back(f);
        std::sort(y.f.begin(), y.f.end());
        break;
      }
      case 6:  // exchange the two copies of a type globally
        swap_copies(hc, f.in);
        break;
      case 7: {  // reorder the children of a binary node
        std::vector<HistoryNode*> binary;
        for (HistoryNode* y : all) {
          if (y->children.size() == 2) binary.push_back(y);
        }
        if (binary.empty()) return -1;
        HistoryNode& y = *binary[pick(binary.size())];
        std::swap(y.children[0], y.children[1]);
        break;
      }
    }
    std::sort(x.f.begin(), x.f.end());
    return op;
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  EdgeType random_type(const Schedule& sc) {
    static const TypeKind kinds[] = {TypeKind::kCPrime, TypeKind::kCSecond, TypeKind::kPPrime,
                                     TypeKind::kPSecond, TypeKind::kDPrime};
    EdgeType t{kinds[pick(5)], 1 + static_cast<int>(pick(static_cast<std::size_t>(std::max(sc.depth, 1))))};
    return t;
  }

  static void swap_copies(HistoryCollection& hc, EdgeType t) {
    auto other = [&](EdgeType e) {
      if (e.index != t.index) return e;
      switch (e.kind) {
        case TypeKind::kCPrime: return EdgeType{TypeKind::kCSecond, e.index};
        case TypeKind::kCSecond: return EdgeType{TypeKind::kCPrime, e.index};
        case TypeKind::kPPrime: return EdgeType{TypeKind::kPSecond, e.index};
        case TypeKind::kPSecond: return EdgeType{TypeKind::kPPrime, e.index};
        default: return e;
      }
    };
    for (auto& h : hc.histories) {
      for (auto& x : h.nodes) {
        for (auto& f : x.f) {
          f.in = other(f.in);
          f.out = other(f.out);
        }
        std::sort(x.f.begin(), x.f.end());
      }
    }
  }

  std::mt19937_64 rng_;
};

// The local checker and the centralized reference must agree on every
// mutant. Disagreements are listed by operator.
TEST(Histories, LocalCheckMatchesReference) {
  constexpr int kPerInstance = 1500;
  int total = 0, unchanged = 0, accepted = 0;
  std::map<std::string, int> disagree;
  std::vector<std::string> samples;
  for (std::size_t c = 0; c < kCorpus.size(); ++c) {
    Instance in(fixture(kCorpus[c]));
    Mutator mut(0x5eed0000 + c);
    const std::string honest = format_histories(in.hc);
    for (int i = 0; i < kPerInstance; ++i) {
      HistoryCollection hc = in.hc;
      int op = mut.apply(hc);
      if (op < 0) continue;
      ++total;
      if (format_histories(hc) == honest) ++unchanged;
      bool local = in.check(hc).ok();
      bool ref = in.refolds(hc);
      accepted += local && ref;
      if (local != ref) {
        std::string key = "op" + std::to_string(op) + (local ? " local-only" : " reference-only");
        if (disagree[key]++ == 0) samples.push_back(kCorpus[c] + " #" + std::to_string(i) + " " + key);
      }
    }
  }
  std::string summary;
  for (const auto& [k, n] : disagree) summary += k + "=" + std::to_string(n) + " ";
  for (const auto& s : samples) summary += "\n  " + s;
  RecordProperty("mutants", total);
  RecordProperty("accepted", accepted);
  RecordProperty("unchanged", unchanged);
  EXPECT_GE(total, 10000);
  EXPECT_TRUE(disagree.empty()) << total << " mutants, " << unchanged << " unchanged; " << summary;
}

}  // namespace
}  // namespace bgpls
