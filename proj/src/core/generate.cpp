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

#include "bgpls/generate.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_map>

namespace bgpls {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

namespace {

// Rotation lists plus negative edges, mutable during construction.
struct Draft {
  std::vector<std::vector<int>> rot;
  std::set<std::pair<int, int>> neg;

  int sign(int u, int w) const {
    return neg.count(std::minmax(u, w)) ? -1 : 1;
  }
  void flip_sign(int u, int w) {
    auto key = std::minmax(u, w);
    if (!neg.erase(key)) neg.insert(key);
  }
  void switch_vertex(int v) {
    std::reverse(rot[v].begin(), rot[v].end());
    for (int w : rot[v]) flip_sign(v, w);
  }
  static void insert_after(std::vector<int>& r, int after, int x) {
    auto it = std::find(r.begin(), r.end(), after);
    r.insert(it + 1, x);
  }
};

using Tri = std::array<int, 3>;  // at tri[1] arriving from tri[0], succ = tri[2]

// Planar triangulation grown by random face and edge insertions.
class PlanarGrowth {
 public:
  explicit PlanarGrowth(Rng* rng) : rng_(rng) {
    d_.rot = {{1, 2}, {2, 0}, {0, 1}};
    add_face({0, 1, 2});
    add_face({0, 2, 1});
  }

  void grow_to(int n) {
    while (static_cast<int>(d_.rot.size()) < n) {
      int f = live_face();
      if (rng_->below(2) == 0) {
        insert_in_face(f);
      } else {
        Tri t = faces_[f];
        int i = static_cast<int>(rng_->below(3));
        insert_in_edge(t[i], t[(i + 1) % 3]);
      }
    }
  }

  Draft& draft() { return d_; }
  std::vector<Tri> live_faces() const {
    std::vector<Tri> out;
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      if (alive_[i]) out.push_back(faces_[i]);
    }
    return out;
  }

 private:
  static std::uint64_t key(int a, int b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }
  void add_face(Tri t) {
    int id = static_cast<int>(faces_.size());
    faces_.push_back(t);
    alive_.push_back(1);
    for (int i = 0; i < 3; ++i) by_edge_[key(t[i], t[(i + 1) % 3])] = id;
  }
  void kill_face(int f) {
    alive_[f] = 0;
    Tri t = faces_[f];
    for (int i = 0; i < 3; ++i) by_edge_.erase(key(t[i], t[(i + 1) % 3]));
  }
  int live_face() {
    while (true) {
      int f = static_cast<int>(rng_->below(faces_.size()));
      if (alive_[f]) return f;
    }
  }
  void insert_in_face(int f) {
    auto [a, b, c] = faces_[f];
    kill_face(f);
    int w = static_cast<int>(d_.rot.size());
    Draft::insert_after(d_.rot[a], c, w);
    Draft::insert_after(d_.rot[b], a, w);
    Draft::insert_after(d_.rot[c], b, w);
    d_.rot.push_back({a, c, b});
    add_face({a, b, w});
    add_face({b, c, w});
    add_face({c, a, w});
  }
  void insert_in_edge(int u, int v) {
    int f1 = by_edge_.at(key(u, v));
    int f2 = by_edge_.at(key(v, u));
    Tri t1 = faces_[f1];
    Tri t2 = faces_[f2];
    int w = t1[0] == u ? t1[2] : (t1[1] == u ? t1[0] : t1[1]);
    int x = t2[0] == v ? t2[2] : (t2[1] == v ? t2[0] : t2[1]);
    if (w == x) {
      insert_in_face(f1);
      return;
    }
    kill_face(f1);
    kill_face(f2);
    int y = static_cast<int>(d_.rot.size());
    std::replace(d_.rot[u].begin(), d_.rot[u].end(), v, y);
    std::replace(d_.rot[v].begin(), d_.rot[v].end(), u, y);
    Draft::insert_after(d_.rot[w], v, y);
    Draft::insert_after(d_.rot[x], u, y);
    d_.rot.push_back({u, w, v, x});
    add_face({u, y, w});
    add_face({y, v, w});
    add_face({v, y, x});
    add_face({y, u, x});
  }

  Rng* rng_;
  Draft d_;
  std::vector<Tri> faces_;
  std::vector<char> alive_;
  std::unordered_map<std::uint64_t, int> by_edge_;
};

// Cyclic rotation of v cut open at the face corner: starts with the face
// successor of v and ends with its predecessor.
std::vector<int> cut_at(const Draft& d, int v, int prv, int nxt) {
  const auto& r = d.rot[v];
  auto j = std::find(r.begin(), r.end(), prv) - r.begin();
  std::vector<int> seq(r.begin() + j + 1, r.end());
  seq.insert(seq.end(), r.begin(), r.begin() + j + 1);
  if (seq.front() != nxt) throw Error("face corner mismatch while gluing");
  return seq;
}

// Identifies triangle f1 with f2 so that the result stays simple. Vertices of
// f2 are left isolated (empty rotation) and must be compacted later. Returns
// false (leaving d untouched) when the identification would create a loop or
// a parallel edge.
bool glue(Draft& d, Tri f1, Tri f2, bool twisted) {
  Draft work = d;
  if (twisted) {
    for (int x : f2) work.switch_vertex(x);
    f2 = {f2[0], f2[2], f2[1]};
  }
  std::array<int, 3> partner;  // partner[i] merges into f1[i]
  for (int i = 0; i < 3; ++i) partner[i] = f2[(3 - i) % 3];
  std::unordered_map<int, int> ident;
  for (int i = 0; i < 3; ++i) ident[partner[i]] = f1[i];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (f1[i] == f2[j]) return false;
    }
  }
  std::array<std::vector<int>, 3> merged;
  for (int i = 0; i < 3; ++i) {
    int a = f1[i];
    int x = partner[i];
    auto la = cut_at(work, a, f1[(i + 2) % 3], f1[(i + 1) % 3]);
    int xi = static_cast<int>(std::find(f2.begin(), f2.end(), x) - f2.begin());
    auto lx = cut_at(work, x, f2[(xi + 2) % 3], f2[(xi + 1) % 3]);
    merged[i] = la;
    merged[i].insert(merged[i].end(), lx.begin() + 1, lx.end() - 1);
  }
  for (int i = 0; i < 3; ++i) work.rot[f1[i]] = merged[i];
  for (int x : f2) work.rot[x].clear();
  for (auto& r : work.rot) {
    for (int& w : r) {
      auto it = ident.find(w);
      if (it != ident.end()) w = it->second;
    }
  }
  std::set<std::pair<int, int>> neg;
  for (auto [u, w] : work.neg) {
    int u2 = ident.count(u) ? ident[u] : u;
    int w2 = ident.count(w) ? ident[w] : w;
    if (u2 != w2) neg.insert(std::minmax(u2, w2));
  }
  work.neg = std::move(neg);
  for (int v = 0; v < static_cast<int>(work.rot.size()); ++v) {
    auto r = work.rot[v];
    std::sort(r.begin(), r.end());
    if (std::adjacent_find(r.begin(), r.end()) != r.end()) return false;
    if (std::binary_search(r.begin(), r.end(), v)) return false;
  }
  d = std::move(work);
  return true;
}

// Walk of the face through the traversal u -> w with the given state.
std::vector<std::pair<int, int>> trace_draft(const Draft& d, int u, int w,
                                             int state) {
  std::vector<std::pair<int, int>> walk;  // (vertex, state)
  int a = u, b = w, s = state;
  do {
    walk.emplace_back(a, s);
    s *= d.sign(a, b);
    const auto& r = d.rot[b];
    auto j = std::find(r.begin(), r.end(), a) - r.begin();
    int sz = static_cast<int>(r.size());
    int nxt = s > 0 ? r[(j + 1) % sz] : r[(j + sz - 1) % sz];
    a = b;
    b = nxt;
  } while (a != u || b != w || s != state);
  return walk;
}

// Switches vertices so that the triangle through u -> w has positive edges
// and is traced with state +1; returns it in successor convention.
Tri positive_triangle(Draft& d, int u, int w) {
  auto walk = trace_draft(d, u, w, 1);
  if (walk.size() != 3) throw Error("expected a triangular face");
  Tri t = {walk[0].first, walk[1].first, walk[2].first};
  if (d.sign(t[0], t[1]) < 0) d.switch_vertex(t[1]);
  if (d.sign(t[1], t[2]) < 0) d.switch_vertex(t[2]);
  for (auto [a, b] : {std::pair{t[0], t[1]}, {t[1], t[0]}}) {
    auto again = trace_draft(d, a, b, 1);
    bool positive = again.size() == 3;
    for (auto [v, s] : again) positive = positive && s > 0;
    if (positive) return {again[0].first, again[1].first, again[2].first};
  }
  throw Error("could not orient the projective face");
}

// Projective K6: antipodal quotient of the icosahedron.
Draft projective_k6() {
  Draft d;
  d.rot = {{3, 2, 1, 4, 5}, {3, 4, 0, 2, 5}, {5, 1, 0, 3, 4},
           {2, 4, 1, 5, 0}, {0, 5, 2, 3, 1}, {0, 3, 1, 2, 4}};
  for (auto e : {std::pair{0, 3}, {0, 4}, {0, 5}, {1, 4}, {2, 3}, {3, 4}}) {
    d.neg.insert(e);
  }
  return d;
}

}  // namespace

int min_random_embedding_size(int genus, bool orientable) {
  if (genus == 0) return 3;
  if (!orientable && genus == 1) return 6;
  return orientable ? 4 * genus + 8 : 4 * genus + 4;
}

namespace {

class PlacementFailed : public Error {
 public:
  using Error::Error;
};

EmbeddingScheme attempt_embedding(int n, int genus, bool orientable, Rng& rng) {
  const bool k6 = !orientable && genus % 2 == 1;
  const int handles = orientable ? genus : genus / 2;
  const int planar_n = n + 3 * handles - (k6 ? 3 : 0);

  PlanarGrowth growth(&rng);
  growth.grow_to(std::max(planar_n, 3));
  Draft d = growth.draft();
  std::vector<Tri> faces = growth.live_faces();
  std::vector<char> removed(d.rot.size(), 0);

  auto drop_touching = [&faces](const Tri& f1, const Tri& f2) {
    std::set<int> touched(f1.begin(), f1.end());
    touched.insert(f2.begin(), f2.end());
    std::erase_if(faces, [&touched](const Tri& t) {
      return touched.count(t[0]) || touched.count(t[1]) || touched.count(t[2]);
    });
  };

  if (k6) {
    int off = static_cast<int>(d.rot.size());
    Draft p = projective_k6();
    for (auto& r : p.rot) {
      for (int& w : r) w += off;
      d.rot.push_back(r);
    }
    for (auto [u, w] : p.neg) d.neg.insert({u + off, w + off});
    removed.resize(d.rot.size(), 0);
    Tri kf = positive_triangle(d, off + 0, off + 3);
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      Tri pf = faces[rng.below(faces.size())];
      if (glue(d, pf, kf, false)) {
        for (int x : kf) removed[x] = 1;
        drop_touching(pf, pf);
        ok = true;
      }
    }
    if (!ok) throw PlacementFailed("could not attach the projective summand");
  }

  for (int h = 0; h < handles; ++h) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      for (std::size_t j = 0; j < faces.size(); ++j) {
        if (i != j) pairs.emplace_back(i, j);
      }
    }
    for (std::size_t i = pairs.size(); i > 1; --i) {
      std::swap(pairs[i - 1], pairs[rng.below(i)]);
    }
    bool ok = false;
    for (auto [i, j] : pairs) {
      Tri f1 = faces[i];
      Tri f2 = faces[j];
      if (glue(d, f1, f2, !orientable)) {
        for (int x : f2) removed[x] = 1;
        drop_touching(f1, f2);
        ok = true;
        break;
      }
    }
    if (!ok) throw PlacementFailed("could not place a handle");
  }

  std::vector<int> keep;
  for (int v = 0; v < static_cast<int>(d.rot.size()); ++v) {
    if (!removed[v]) keep.push_back(v);
  }
  std::vector<VertexId> perm(keep.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i + 1;
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  // New index = rank of the assigned ID.
  std::vector<int> new_index(d.rot.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    new_index[keep[i]] = static_cast<int>(perm[i] - 1);
  }
  std::vector<std::vector<int>> rotation(keep.size());
  for (int v : keep) {
    auto& r = rotation[new_index[v]];
    for (int w : d.rot[v]) r.push_back(new_index[w]);
  }
  std::vector<std::pair<int, int>> negative;
  for (auto [u, w] : d.neg) negative.emplace_back(new_index[u], new_index[w]);
  std::vector<VertexId> ids(keep.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i + 1;
  EmbeddingScheme s = EmbeddingScheme::from_rotation(ids, rotation, negative);
  SurfaceKind kind = euler_genus(s);
  if (kind.genus != genus || kind.orientable != orientable) {
    throw Error("generator produced " + kind.label());
  }
  return s;
}

}  // namespace

EmbeddingScheme random_embedding(int n, int genus, bool orientable,
                                 std::uint64_t seed) {
  if (genus < 0 || (!orientable && genus == 0)) {
    throw Error("invalid surface request");
  }
  if (n < min_random_embedding_size(genus, orientable)) {
    throw Error("n too small for the requested surface");
  }
  // Small triangulations sometimes run out of disjoint faces; the retries
  // continue the same random stream, so the result stays a function of seed.
  Rng rng(seed);
  constexpr int kAttempts = 64;
  for (int attempt = 1;; ++attempt) {
    try {
      return attempt_embedding(n, genus, orientable, rng);
    } catch (const PlacementFailed& e) {
      if (attempt == kAttempts) throw Error(std::string(e.what()) + "; increase n");
    }
  }
}

}  // namespace bgpls
