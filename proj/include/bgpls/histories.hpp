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


#ifndef BGPLS_HISTORIES_HPP_
#define BGPLS_HISTORIES_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bgpls/surgery.hpp"

namespace bgpls {

class WalkMismatch : public Error {
 public:
  using Error::Error;
};

class NoRuleApplies : public Error {
 public:
  using Error::Error;
};

// The j-th image (1-based) of the vertex with ID `id` in the final stage.
struct Avatar {
  VertexId id = 0;
  int j = 0;
  auto operator<=>(const Avatar&) const = default;
};

using AvatarSet = std::vector<Avatar>;  // sorted, duplicate-free

enum class TypeKind : std::uint8_t { kNone, kCPrime, kCSecond, kPPrime, kPSecond, kDPrime };

struct EdgeType {
  TypeKind kind = TypeKind::kNone;
  int index = 0;
  auto operator<=>(const EdgeType&) const = default;
};

std::string type_name(EdgeType t);  // "C'1", "C''1", "P'2", "D'1", "-"
EdgeType parse_type(const std::string& s);

// (X, Y, Z) with X the predecessor and Z the successor of Y on a directed
// boundary walk of the node's stage; `in` types (X, Y), `out` types (Y, Z).
struct Footprint {
  AvatarSet x, y, z;
  EdgeType in, out;
  auto operator<=>(const Footprint&) const = default;
};

enum class Rule : std::uint8_t { kNone, kElementary, kSingleExtremity, kDoubleExtremity, kCrossCap };
const char* rule_name(Rule r);

struct HistoryNode {
  int level = 0;
  AvatarSet s;
  std::vector<AvatarSet> n;  // sorted
  std::vector<Footprint> f;  // sorted multiset
  std::vector<int> children; // indices into History::nodes; copy 0 first

  // Prover bookkeeping from fill_footprints_upward; not part of a certificate.
  Rule rule = Rule::kNone;
  std::array<int, 2> consumed{-1, -1};  // indices into the children's f
  bool swapped = false;                 // extremity roles: child 1 plays the primed side
  std::vector<std::array<int, 2>> from; // per f entry: {child slot, index}, or {-1, product}
};

struct History {
  VertexId id = 0;
  std::vector<HistoryNode> nodes;  // nodes[0] is the root
};

// Stage schedule: levels 1..m double one-sided cycles, the next kprime
// levels duplicate cycles, the remaining levels duplicate paths.
struct Schedule {
  int m = 0;
  int kprime = 0;
  int depth = 0;

  int paths() const { return depth - m - kprime; }
  StepKind kind(int level) const;
  int index(int level) const;
  // Level at which a type is created, or -1 outside the alphabet.
  int creation_level(EdgeType t) const;
  bool operator==(const Schedule&) const = default;
};

struct HistoryCollection {
  Schedule schedule;
  std::vector<History> histories;  // sorted by ID
  std::vector<Avatar> walk;        // the directed special walk
  std::vector<Avatar> hstar;       // final-stage vertex index -> avatar (prover side)

  const History* find(VertexId id) const;
};

// Histories with avatar sets and neighbourhoods; no footprints yet. Leaves
// of h(v) are numbered depth-first, copy 0 before copy 1.
HistoryCollection build_histories(const UnfoldingTrace& trace);

// One footprint per occurrence of a leaf's avatar on the walk.
void seed_leaf_footprints(HistoryCollection& hc, const std::vector<Avatar>& walk);

// Applies Elementary, Single/Double extremity, Cross-cap and Vacancy from
// the leaves to the roots. Throws NoRuleApplies.
void fill_footprints_upward(HistoryCollection& hc);

// Stamps edge types from the roots down, using the rule applications
// recorded by fill_footprints_upward.
void assign_types_downward(HistoryCollection& hc);

// build, seed, fill, assign.
HistoryCollection certify_histories(const UnfoldingTrace& trace);

// Footprints and types read directly off the stage embeddings: every
// special face is walked in the direction inherited from the special walk,
// and each edge gets the type of the step that created it.
void trace_footprints(HistoryCollection& hc, const UnfoldingTrace& trace);

// The final-stage graph over avatars.
struct AvatarGraph {
  std::vector<Avatar> vertices;            // sorted
  std::vector<std::vector<int>> adj;       // sorted indices

  static AvatarGraph from_scheme(const EmbeddingScheme& s, const std::vector<Avatar>& names);
  int index_of(const Avatar& a) const;     // -1 when absent
};

struct Violation {
  int condition = 1;  // 1..5
  std::string code;
  VertexId vertex = 0;
  int level = -1;
  std::string detail;
};

struct ConsistencyReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(int condition) const;
};

ConsistencyReport check_local_consistency(const Graph& g, const AvatarGraph& hstar,
                                          const std::vector<Avatar>& walk,
                                          const HistoryCollection& hc);

// A trace that refold can glue, rebuilt from the collection, the final
// stage (names[v] is the avatar of vertex v) and the walk. Seams are taken
// from the footprints each binary node consumes. Throws
// GlobalInconsistency("structure", level) when the collection fails the
// structural part of condition 1.
UnfoldingTrace reconstruct_trace(const Graph& g, const EmbeddingScheme& hstar,
                                 const std::vector<Avatar>& names, const HistoryCollection& hc);

void write_histories(std::ostream& out, const HistoryCollection& hc);
std::string format_histories(const HistoryCollection& hc);
HistoryCollection read_histories(std::istream& in);
HistoryCollection parse_histories(const std::string& text);

}  // namespace bgpls

#endif  // BGPLS_HISTORIES_HPP_
