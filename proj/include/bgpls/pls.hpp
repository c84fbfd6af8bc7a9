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

#ifndef BGPLS_PLS_HPP_
#define BGPLS_PLS_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bgpls/embedding.hpp"
#include "bgpls/graph.hpp"
#include "bgpls/histories.hpp"

namespace bgpls {

class DecodeError : public Error {
 public:
  using Error::Error;
};

// Bits are stored most significant first within each byte.
class BitString {
 public:
  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1; }
  void push(bool b);
  void flip(std::size_t i) { bytes_[i >> 3] ^= static_cast<std::uint8_t>(0x80 >> (i & 7)); }
  void resize(std::size_t n);

  std::string hex() const;
  static BitString from_hex(const std::string& hex, std::size_t bits);

  bool operator==(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

class BitWriter {
 public:
  void put(std::uint64_t value, int width);  // throws Error if value does not fit
  void flag(bool b) { bits_.push(b); }
  const BitString& bits() const { return bits_; }

 private:
  BitString bits_;
};

class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}
  std::uint64_t get(int width);  // throws DecodeError past the end
  bool flag() { return get(1) != 0; }
  bool done() const { return pos_ == bits_.size(); }

 private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

// Bits needed to write every value in [0, v].
int bits_for(std::uint64_t v);

// ---------------------------------------------------------------------------
// Verdicts

enum class Reason : std::uint8_t {
  kAccept,
  kDecode,           // own certificate unreadable
  kNeighbourDecode,  // a neighbour's certificate unreadable
  kParameters,       // scheme parameters differ or do not add up
  kClaim,            // the certified surface exceeds the claim
  kPacking,          // edge payloads missing, duplicated or misaddressed
  kTree,             // spanning-tree fragment
  kWalk,             // positions along the special walk
  kChain,            // positions and pairing of typed chains
  kPlanarity,        // tour labels of the final stage
  kFace,             // the special walk is not the distinguished face
  kStructure,        // footprint links, stage edges, types
  kRule,             // rule application at a history node
  kImage,            // typed chains are not the image of the next level
};
const char* reason_name(Reason r);

struct Verdict {
  Reason reason = Reason::kAccept;
  std::string detail;

  bool accept() const { return reason == Reason::kAccept; }
  static Verdict reject(Reason r, std::string detail) { return {r, std::move(detail)}; }
};

// ---------------------------------------------------------------------------
// Line-to-node packing

// For every edge of g.edges(), the index of the endpoint that hosts its
// payload: the one removed first in the degeneracy order.
std::vector<int> edge_hosts(const Graph& g);

struct PackedNode {
  BitString own;
  std::vector<std::pair<VertexId, BitString>> hosted;  // (other endpoint, payload), sorted
};

// edge_payloads is indexed like g.edges().
std::vector<PackedNode> pack_line_certificates(const Graph& g, const std::vector<BitString>& node,
                                               const std::vector<BitString>& edge_payloads);

// Payloads of all edges at `self`, keyed by the other endpoint, read from
// the closed neighbourhood. nullopt when some edge has no payload or two.
std::optional<std::map<VertexId, BitString>> recover_edge_payloads(
    VertexId self, const PackedNode& own,
    const std::vector<std::pair<VertexId, const PackedNode*>>& neighbours);

// ---------------------------------------------------------------------------
// Spanning-tree fragments

struct TreeFragment {
  VertexId parent = 0;  // own ID at the root
  std::uint64_t dist = 0;
  bool operator==(const TreeFragment&) const = default;
};

// BFS tree towards `root`; the parent is the smallest-ID neighbour one step
// closer, so the fragments are determined by the root alone.
std::vector<TreeFragment> tree_fragments(const Graph& g, int root);

Verdict check_tree_fragment(VertexId self, VertexId root, const TreeFragment& own,
                            const std::vector<std::pair<VertexId, TreeFragment>>& neighbours);

// A directed path or cycle of g, certified by per-node triples, positions
// along the object and a spanning tree rooted at its first vertex.
struct ObjectFragment {
  VertexId root = 0;
  std::uint64_t length = 0;
  bool closed = false;
  TreeFragment tree;
  bool on = false;
  VertexId pred = 0, succ = 0;  // 0 when absent
  std::uint64_t pos = 0;
  bool operator==(const ObjectFragment&) const = default;
};

std::vector<ObjectFragment> tree_subcertificates(const Graph& g, const std::vector<int>& object,
                                                 bool closed);

Verdict check_object_fragment(VertexId self, const ObjectFragment& own,
                              const std::vector<std::pair<VertexId, ObjectFragment>>& neighbours);

// ---------------------------------------------------------------------------
// Planarity with a distinguished face

// Labels of a dart: its index on the tour around a spanning tree, the left
// index of the innermost co-tree chord strictly enclosing it (or the dart
// count when none) and whether the dart points to its origin's tree parent.
struct DartLabel {
  std::uint64_t idx = 0;
  std::uint64_t cov = 0;
  bool parent = false;
  bool operator==(const DartLabel&) const = default;
};

struct PlanarityLabels {
  int root = -1;
  std::uint64_t darts = 0;
  std::vector<std::uint64_t> dist;  // per vertex
  std::vector<DartLabel> dart;      // per dart of the scheme
};

// Tour starting with `start` (a dart leaving `root`); the corner before it
// lies on the face the labels distinguish. `key` orders neighbours for the
// canonical parent choice. Labels are produced for any rotation system; on
// a non-planar one the chords cross and the check fails somewhere.
PlanarityLabels planarity_labels(const EmbeddingScheme& s, int root, int start,
                                 const std::vector<Avatar>& key);

// The same tour around any spanning tree, given by parent indices (-1 at
// the root); dist is then the depth in that tree. The verifier only accepts
// the canonical BFS tree of planarity_labels.
PlanarityLabels tour_labels(const EmbeddingScheme& s, int root, int start,
                            const std::vector<int>& parent);

// What a vertex sees of its darts.
struct PlanarVertexView {
  Avatar key;
  std::uint64_t dist = 0;
  struct Dart {
    Avatar target;
    std::uint64_t target_dist = 0;
    DartLabel out;   // this vertex -> target
    DartLabel back;  // target -> this vertex
  };
  std::vector<Dart> darts;
  // Corners the face must have at this vertex, as (dart to X, dart to Z)
  // positions in `darts`; nullopt when no face is distinguished.
  std::optional<std::vector<std::pair<int, int>>> face;
};

Verdict check_planar_vertex(const PlanarVertexView& v, std::uint64_t darts, Avatar root);

// Sub-scheme on a graph with a scheme: vertex v is keyed {id(v), 1}.
std::vector<PlanarVertexView> planarity_views(const EmbeddingScheme& s,
                                              const PlanarityLabels& labels,
                                              const std::vector<int>* face_walk);

// Tour visits (the flattened tree) with no chord jumping over them, each
// given as the visited vertex. Visits are numbered from 1 along the tour.
std::vector<std::pair<int, int>> uncovered_visits(const EmbeddingScheme& s,
                                                  const PlanarityLabels& labels);

// ---------------------------------------------------------------------------
// Certificates

struct Claim {
  int k = 0;
  bool orientable = true;
  bool operator==(const Claim&) const = default;
};

struct ObjectParams {
  VertexId root = 0;
  std::uint64_t length = 0;
  std::uint64_t offset = 0;  // second cycle copies only
  bool operator==(const ObjectParams&) const = default;
};

// Shared by every node; neighbours must agree on all of it.
struct CertGlobals {
  int id_width = 1;
  int index_width = 1;  // history node indices
  int occ_width = 1;    // footprint occurrences per node
  int pos_width = 1;    // positions, lengths, tour indices
  int count_width = 1;  // list lengths
  Claim claim;
  int m = 0;
  int kprime = 0;
  std::uint64_t darts = 0;  // dart count of the final stage
  Avatar planar_root;
  std::vector<ObjectParams> objects;

  Schedule schedule() const;
  bool operator==(const CertGlobals&) const = default;
};

enum class ObjectKind : std::uint8_t { kWalk, kChain };

// Certified objects in order: the special walk, then per level the typed
// chains the level creates (D', or C' and C'', or P' and P'').
struct ObjectSlot {
  ObjectKind kind = ObjectKind::kWalk;
  int level = 0;
  EdgeType type;
};
std::vector<ObjectSlot> object_slots(const Schedule& s);

// One H* edge between leaf `host_leaf` of the host and `other_leaf` of the
// other endpoint; leaves are numbered in preorder from 0.
struct LeafPair {
  int host_leaf = 0;
  int other_leaf = 0;
  DartLabel out;   // host avatar -> other avatar
  DartLabel back;  // other avatar -> host avatar
  auto operator<=>(const LeafPair& o) const {
    return std::pair(host_leaf, other_leaf) <=> std::pair(o.host_leaf, o.other_leaf);
  }
  bool operator==(const LeafPair& o) const {
    return host_leaf == o.host_leaf && other_leaf == o.other_leaf && out == o.out &&
           back == o.back;
  }
};

// Two consecutive footprints of one boundary walk of a stage: occurrence
// `from_occ` of history node `from_node` is followed by occurrence `to_occ`
// of `to_node`, across an edge of type `type`.
struct LinkRecord {
  bool from_host = true;
  int level = 0;
  int from_node = 0, from_occ = 0;
  int to_node = 0, to_occ = 0;
  EdgeType type;
  std::uint64_t walk_pos = 0;   // last level only: position of the tail on B*
  std::uint64_t chain_pos = 0;  // creation level of `type` only
  auto operator<=>(const LinkRecord&) const = default;
};

struct EdgePayload {
  VertexId other = 0;
  std::vector<LeafPair> pairs;   // sorted by leaves
  std::vector<LinkRecord> links; // sorted
  bool operator==(const EdgePayload&) const = default;
};

struct NodeCertificate {
  CertGlobals globals;
  std::vector<TreeFragment> trees;         // per object
  std::vector<int> shape;                  // child counts of h(v) in preorder
  std::vector<std::uint64_t> leaf_dist;    // per leaf, in the final-stage tree
  std::vector<EdgePayload> hosted;         // sorted by `other`
  bool operator==(const NodeCertificate&) const = default;
};

BitString encode_certificate(const NodeCertificate& c);
// Throws DecodeError unless `bits` is exactly the encoding of a certificate.
NodeCertificate decode_certificate(const BitString& bits);

struct CertificateAssignment {
  std::vector<BitString> certs;  // by vertex index of g
  bool operator==(const CertificateAssignment&) const = default;
};

// Unfolds the scheme, builds the histories and packs everything. A claim
// of k = 0 on an orientable surface yields the planarity scheme alone,
// labelled from the given rotation even when it is not planar.
CertificateAssignment prove(const Graph& g, const EmbeddingScheme& s, const Claim& claim);

// ---------------------------------------------------------------------------
// Verification

// One round: the node's ID, its certificate and its neighbours'.
Verdict verify_node(VertexId id, const BitString& own,
                    const std::vector<std::pair<VertexId, BitString>>& neighbours);

struct VerifierReport {
  std::vector<Verdict> verdicts;  // by vertex index
  bool accepted() const;
  int rejecting() const;
};

VerifierReport run_verifier(const Graph& g, const CertificateAssignment& a);

// The same decision taken globally: decode everything, run the sub-scheme
// checks at every node, assemble the histories and run
// check_local_consistency on them.
struct CentralReport {
  Verdict verdict;
  ConsistencyReport consistency;  // empty unless the histories were assembled
  bool accept() const { return verdict.accept(); }
};

CentralReport centralized_check(const Graph& g, const CertificateAssignment& a);

// ---------------------------------------------------------------------------
// Adversary

enum class Mutation : std::uint8_t {
  kBitFlip,
  kFootprintSwap,
  kChainReversal,
  kDistanceCorruption,
  kRootFork,
  kAvatarRelabel,
  kPayloadDrop,
  kWalkSplice,
};
constexpr int kMutationCount = 8;
const char* mutation_name(Mutation m);

// A corrupted copy distinct from `a`, or nullopt when the operator has
// nothing to act on.
std::optional<CertificateAssignment> mutate(const Graph& g, const CertificateAssignment& a,
                                            std::mt19937_64& rng, Mutation op);

// Reverses the second copy of the first duplicated cycle at every level and
// renumbers its positions so that every position check still passes: the
// two copies are then glued with equal orientations.
std::optional<CertificateAssignment> klein_attack(const Graph& g, const CertificateAssignment& a);

struct FuzzCase {
  Mutation op;
  bool distributed_accept = false;
  bool central_accept = false;
  Reason reason = Reason::kAccept;
};

struct FuzzReport {
  std::vector<FuzzCase> cases;
  int accepted() const;
  int disagreements() const;
};

FuzzReport fuzz(const Graph& g, const CertificateAssignment& honest, int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Reports

std::size_t max_certificate_bits(const CertificateAssignment& a);
void write_certificate_dump(std::ostream& out, const Graph& g, const CertificateAssignment& a);
void write_verdicts(std::ostream& out, const Graph& g, const VerifierReport& r);

}  // namespace bgpls

#endif  // BGPLS_PLS_HPP_
