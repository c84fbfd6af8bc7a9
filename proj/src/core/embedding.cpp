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

#include "bgpls/embedding.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace bgpls {

EmbeddingScheme EmbeddingScheme::from_rotation(
    std::vector<VertexId> ids, const std::vector<std::vector<int>>& rotation,
    const std::vector<std::pair<int, int>>& negative) {
  const int n = static_cast<int>(ids.size());
  if (static_cast<int>(rotation.size()) != n) {
    throw InvalidGraph("rotation size does not match vertex count");
  }
  for (int v = 1; v < n; ++v) {
    if (ids[v - 1] >= ids[v]) throw InvalidGraph("ids must be increasing");
  }
  EmbeddingScheme s;
  s.ids_ = std::move(ids);
  std::unordered_map<std::uint64_t, int> edge_of_pair;
  auto key = [n](int u, int w) {
    return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(w);
  };
  for (int u = 0; u < n; ++u) {
    for (int w : rotation[u]) {
      if (w < 0 || w >= n) throw InvalidGraph("neighbour index out of range");
      if (w == u) throw InvalidGraph("self-loop at " + std::to_string(s.ids_[u]));
      if (u < w) {
        if (edge_of_pair.count(key(u, w))) throw InvalidGraph("parallel edges");
        edge_of_pair[key(u, w)] = static_cast<int>(s.ends_.size());
        s.ends_.push_back({u, w});
      }
    }
  }
  s.sign_.assign(s.ends_.size(), 1);
  s.rot_.assign(n, {});
  s.pos_.assign(2 * s.ends_.size(), -1);
  for (int v = 0; v < n; ++v) {
    for (int w : rotation[v]) {
      auto it = edge_of_pair.find(key(std::min(v, w), std::max(v, w)));
      if (it == edge_of_pair.end()) {
        throw InvalidGraph("asymmetric rotation between " +
                           std::to_string(s.ids_[v]) + " and " +
                           std::to_string(s.ids_[w]));
      }
      int d = 2 * it->second + (v == s.ends_[it->second][0] ? 0 : 1);
      if (s.pos_[d] >= 0) throw InvalidGraph("parallel edges");
      s.pos_[d] = static_cast<int>(s.rot_[v].size());
      s.rot_[v].push_back(d);
    }
  }
  for (int p : s.pos_) {
    if (p < 0) throw InvalidGraph("asymmetric rotation");
  }
  for (auto [u, w] : negative) {
    int d = s.find_dart(u, w);
    if (d < 0) throw InvalidGraph("signature on a missing edge");
    s.sign_[d >> 1] = -1;
  }
  return s;
}

int EmbeddingScheme::index_of(VertexId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return -1;
  return static_cast<int>(it - ids_.begin());
}

int EmbeddingScheme::next(int d) const {
  const auto& r = rot_[origin(d)];
  int p = pos_[d] + 1;
  return r[p == static_cast<int>(r.size()) ? 0 : p];
}

int EmbeddingScheme::prev(int d) const {
  const auto& r = rot_[origin(d)];
  int p = pos_[d];
  return r[p == 0 ? r.size() - 1 : p - 1];
}

std::vector<int> EmbeddingScheme::neighbours(int v) const {
  std::vector<int> out;
  out.reserve(rot_[v].size());
  for (int d : rot_[v]) out.push_back(head(d));
  return out;
}

int EmbeddingScheme::find_dart(int u, int w) const {
  for (int d : rot_[u]) {
    if (head(d) == w) return d;
  }
  return -1;
}

Graph EmbeddingScheme::graph() const {
  Graph g;
  g.ids = ids_;
  g.adj.assign(ids_.size(), {});
  for (int v = 0; v < num_vertices(); ++v) {
    for (int d : rot_[v]) g.adj[v].push_back(head(d));
    std::sort(g.adj[v].begin(), g.adj[v].end());
  }
  return g;
}

bool EmbeddingScheme::all_positive() const {
  return std::all_of(sign_.begin(), sign_.end(), [](int x) { return x > 0; });
}

void EmbeddingScheme::switch_vertex(int v) {
  std::reverse(rot_[v].begin(), rot_[v].end());
  for (std::size_t i = 0; i < rot_[v].size(); ++i) {
    pos_[rot_[v][i]] = static_cast<int>(i);
    sign_[rot_[v][i] >> 1] *= -1;
  }
}

BoundaryWalk trace_face(const EmbeddingScheme& s, int dart, int state) {
  BoundaryWalk w;
  int d = dart;
  int st = state;
  do {
    w.vertices.push_back(s.origin(d));
    w.darts.push_back(d);
    w.states.push_back(st);
    st *= s.sign(d >> 1);
    int in = EmbeddingScheme::twin(d);
    int corner = st > 0 ? in : s.prev(in);
    w.corners.push_back(corner);  // corner at the next vertex; rotated below
    d = st > 0 ? s.next(in) : s.prev(in);
  } while (d != dart || st != state);
  // corners[i] was recorded on arrival at vertices[i + 1].
  std::rotate(w.corners.rbegin(), w.corners.rbegin() + 1, w.corners.rend());
  return w;
}

BoundaryWalk reversed(const EmbeddingScheme& s, const BoundaryWalk& w) {
  const int d = w.darts.back();
  return trace_face(s, EmbeddingScheme::twin(d), -w.states.back() * s.sign(d >> 1));
}

std::vector<BoundaryWalk> trace_faces(const EmbeddingScheme& s) {
  std::vector<BoundaryWalk> faces;
  std::vector<char> used(2 * s.num_darts(), 0);
  auto slot = [](int d, int st) { return 2 * d + (st > 0 ? 0 : 1); };
  for (int d = 0; d < s.num_darts(); ++d) {
    for (int st : {1, -1}) {
      if (used[slot(d, st)]) continue;
      BoundaryWalk w = trace_face(s, d, st);
      for (std::size_t i = 0; i < w.size(); ++i) {
        int dd = w.darts[i];
        int ss = w.states[i];
        used[slot(dd, ss)] = 1;
        used[slot(EmbeddingScheme::twin(dd), -ss * s.sign(dd >> 1))] = 1;
      }
      faces.push_back(std::move(w));
    }
  }
  return faces;
}

std::string SurfaceKind::label() const {
  return (orientable ? "T" : "P") + std::to_string(genus);
}

SurfaceKind surface_from_counts(long v, long e, long f, bool orientable) {
  SurfaceKind k;
  k.orientable = orientable;
  k.faces = static_cast<int>(f);
  k.euler_characteristic = v - e + f;
  long chi = k.euler_characteristic;
  if (orientable) {
    if (chi % 2 != 0 || chi > 2) {
      throw ParityError("orientable scheme with Euler characteristic " +
                        std::to_string(chi));
    }
    k.genus = static_cast<int>((2 - chi) / 2);
  } else {
    if (chi > 1) {
      throw ParityError("non-orientable scheme with Euler characteristic " +
                        std::to_string(chi));
    }
    k.genus = static_cast<int>(2 - chi);
  }
  return k;
}

SurfaceKind euler_genus(const EmbeddingScheme& s) {
  long faces = s.num_edges() == 0 ? 1 : static_cast<long>(trace_faces(s).size());
  return surface_from_counts(s.num_vertices(), s.num_edges(), faces,
                             is_orientable(s));
}

std::optional<std::vector<int>> orientation_switches(const EmbeddingScheme& s) {
  const int n = s.num_vertices();
  std::vector<int> flip(n, -1);
  std::vector<int> out;
  for (int r = 0; r < n; ++r) {
    if (flip[r] >= 0) continue;
    flip[r] = 0;
    std::deque<int> q = {r};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      if (flip[u]) out.push_back(u);
      for (int d : s.rotation(u)) {
        int w = s.head(d);
        int want = flip[u] ^ (s.sign(d >> 1) < 0 ? 1 : 0);
        if (flip[w] < 0) {
          flip[w] = want;
          q.push_back(w);
        } else if (flip[w] != want) {
          return std::nullopt;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_orientable(const EmbeddingScheme& s) {
  return orientation_switches(s).has_value();
}

int cycle_sign(const EmbeddingScheme& s, const std::vector<int>& cycle) {
  int prod = 1;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    int d = s.find_dart(cycle[i], cycle[(i + 1) % cycle.size()]);
    if (d < 0) throw InvalidGraph("cycle uses a missing edge");
    prod *= s.sign(d >> 1);
  }
  return prod;
}

}  // namespace bgpls
