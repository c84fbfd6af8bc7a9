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

#ifndef BGPLS_EMBEDDING_HPP_
#define BGPLS_EMBEDDING_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bgpls/graph.hpp"

namespace bgpls {

class ParityError : public Error {
 public:
  using Error::Error;
};

// Half-edge of edge `edge`; side 0 leaves the lower-index endpoint. Dart
// number 2 * edge + side.
struct Dart {
  int origin;
  int edge;
  int side;
};

// Rotation system plus edge signatures. Vertex IDs are strictly increasing
// with index, so graph() keeps indices stable.
class EmbeddingScheme {
 public:
  EmbeddingScheme() = default;

  // rotation[v] lists neighbour indices in cyclic order. Edges listed in
  // `negative` (as index pairs, any orientation) get signature -1.
  static EmbeddingScheme from_rotation(
      std::vector<VertexId> ids, const std::vector<std::vector<int>>& rotation,
      const std::vector<std::pair<int, int>>& negative = {});

  int num_vertices() const { return static_cast<int>(ids_.size()); }
  int num_edges() const { return static_cast<int>(ends_.size()); }
  int num_darts() const { return 2 * num_edges(); }

  VertexId id(int v) const { return ids_[v]; }
  const std::vector<VertexId>& ids() const { return ids_; }
  int index_of(VertexId id) const;

  static int twin(int d) { return d ^ 1; }
  static int edge_of(int d) { return d >> 1; }
  int origin(int d) const { return ends_[d >> 1][d & 1]; }
  int head(int d) const { return ends_[d >> 1][(d & 1) ^ 1]; }
  Dart dart(int d) const { return {origin(d), d >> 1, d & 1}; }
  std::array<int, 2> ends(int e) const { return ends_[e]; }

  // Rotation successor / predecessor around origin(d).
  int next(int d) const;
  int prev(int d) const;
  int position(int d) const { return pos_[d]; }

  int sign(int e) const { return sign_[e]; }
  void set_sign(int e, int s) { sign_[e] = s; }

  const std::vector<int>& rotation(int v) const { return rot_[v]; }
  std::vector<int> neighbours(int v) const;  // rotation order
  int degree(int v) const { return static_cast<int>(rot_[v].size()); }
  int find_dart(int u, int w) const;  // dart u -> w, or -1

  Graph graph() const;
  bool all_positive() const;

  // Reverses the rotation at v and negates the signatures at v. The surface
  // and its faces are unchanged.
  void switch_vertex(int v);

 private:
  std::vector<VertexId> ids_;
  std::vector<std::array<int, 2>> ends_;
  std::vector<int> sign_;
  std::vector<std::vector<int>> rot_;
  std::vector<int> pos_;
};

struct BoundaryWalk {
  std::vector<int> vertices;  // walk closes from the last entry to the first
  std::vector<int> darts;     // darts[i] leaves vertices[i]
  std::vector<int> corners;   // corner at vertices[i], named by the dart before it
  std::vector<int> states;    // orientation state when leaving vertices[i]

  std::size_t size() const { return vertices.size(); }
};

// Walk starting by leaving origin(dart) along dart with the given state.
BoundaryWalk trace_face(const EmbeddingScheme& s, int dart, int state);

// The same face walked the other way, still starting at w.vertices[0].
BoundaryWalk reversed(const EmbeddingScheme& s, const BoundaryWalk& w);

// One walk per face; consumes every (dart, state) pair together with its
// reverse exactly once.
std::vector<BoundaryWalk> trace_faces(const EmbeddingScheme& s);

struct SurfaceKind {
  bool orientable = true;
  int genus = 0;  // demigenus when !orientable
  int faces = 0;
  long euler_characteristic = 2;

  std::string label() const;  // "T<k>" or "P<k>"
  bool operator==(const SurfaceKind&) const = default;
};

SurfaceKind euler_genus(const EmbeddingScheme& s);
SurfaceKind surface_from_counts(long v, long e, long f, bool orientable);

// Vertices whose switch makes every signature +1, or nullopt when some cycle
// has negative signature product.
std::optional<std::vector<int>> orientation_switches(const EmbeddingScheme& s);
bool is_orientable(const EmbeddingScheme& s);

// Signature product along a closed vertex sequence.
int cycle_sign(const EmbeddingScheme& s, const std::vector<int>& cycle);

}  // namespace bgpls

#endif  // BGPLS_EMBEDDING_HPP_
