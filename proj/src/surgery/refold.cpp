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

#include "bgpls/surgery.hpp"
#include "sheet.hpp"

namespace bgpls {

using detail::Sheet;

namespace {

bool rotation_equal(const std::vector<int>& a, const std::vector<int>& b, std::size_t r) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[(i + r) % n] != b[i]) return false;
  }
  return true;
}

// +1 when b is a rotation of a, -1 when it is a rotation of reversed a.
int cyclic_direction(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty()) return 0;
  std::vector<int> rev(a.rbegin(), a.rend());
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (rotation_equal(a, b, r)) return 1;
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (rotation_equal(rev, b, r)) return -1;
  }
  return 0;
}

// Direction in which p occurs as a contiguous piece of the closed walk w:
// +1, -1, 2 for a single vertex present, 0 when absent.
int piece_direction(const std::vector<int>& w, const std::vector<int>& p) {
  const std::size_t n = w.size();
  if (p.empty() || p.size() > n) return 0;
  if (p.size() == 1) return std::find(w.begin(), w.end(), p[0]) != w.end() ? 2 : 0;
  for (int dir : {1, -1}) {
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < p.size() && ok; ++j) {
        std::size_t at = dir > 0 ? (i + j) % n : (i + n - j % n) % n;
        ok = w[at] == p[j];
      }
      if (ok) return dir;
    }
  }
  return 0;
}

struct FaceMatch {
  int sense = 0;  // +1 when the walk follows the traced face, -1 reversed
  int face = -1;
};

// Sense is taken against the orientation state of the traced face, so on
// an all-positive scheme it is the same for every face walked clockwise.
FaceMatch match_face(const std::vector<BoundaryWalk>& faces, const std::vector<int>& walk) {
  FaceMatch best;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    int d = cyclic_direction(faces[f].vertices, walk) * faces[f].states.front();
    if (d == 1) return {1, static_cast<int>(f)};
    if (d == -1 && best.sense == 0) best = {-1, static_cast<int>(f)};
  }
  return best;
}

class Refolder {
 public:
  explicit Refolder(const UnfoldingTrace& t)
      : t_(t), cur_(Sheet::from_scheme(t.final_scheme())), flipped_(cur_.n(), 0) {}

  EmbeddingScheme run() {
    const int depth = t_.depth();
    if (depth > 0) {
      make_positive(depth);
      auto faces = trace_faces(cur_.build());
      FaceMatch star = match_face(faces, t_.special_walk);
      if (star.sense == 0) throw GlobalInconsistency("special-walk", depth);
      sense_ = star.sense;
      const SurgeryStep& last = t_.steps.back();
      const int want = last.kind == StepKind::kCycleDouble ? 0 : 1;
      if (last.face_walks.empty() ||
          cyclic_direction(last.face_walks.front(), t_.special_walk) * want < want ||
          cyclic_direction(last.face_walks.front(), t_.special_walk) == 0) {
        throw GlobalInconsistency("special-walk", depth);
      }
    }
    for (int level = depth; level >= 1; --level) undo(level);
    EmbeddingScheme result = build(0);
    const Graph want = t_.embeddings.front().graph();
    const Graph got = result.graph();
    if (want.ids != got.ids || want.adj != got.adj) throw GlobalInconsistency("graph", 0);
    SurfaceKind kind = euler_genus(result);
    if (kind.orientable != t_.surface.orientable || kind.genus != t_.surface.genus) {
      throw GlobalInconsistency("genus", 0);
    }
    return result;
  }

 private:
  EmbeddingScheme build(int level) const {
    try {
      return cur_.build();
    } catch (const InvalidGraph&) {
      throw GlobalInconsistency("seam", level);
    }
  }

  void undo(int level) {
    const SurgeryStep& st = t_.steps[level - 1];
    const int n_post = cur_.n();
    const int n_pre = static_cast<int>(st.splitting.alpha.size());
    check_splitting(st, level, n_pre, n_post);
    for (int v : st.switched) {
      if (v < 0 || v >= n_post) throw GlobalInconsistency("splitting", level);
      cur_.switch_vertex(v);
    }
    if (st.kind != StepKind::kCycleDouble) make_positive(level);

    EmbeddingScheme post = build(level);
    const auto faces = trace_faces(post);
    const long f_post = static_cast<long>(faces.size());
    const auto& alpha = st.splitting.alpha;
    auto copies = [&](int c) {
      std::vector<int> out;
      for (int v : st.object) out.push_back(alpha[v][c]);
      return out;
    };

    std::map<int, Seam> seam_of;
    for (const Seam& s : st.seams) {
      if (s.v < 0 || s.v >= n_post || !seam_of.emplace(s.v, s).second) {
        throw GlobalInconsistency("seam", level);
      }
    }

    switch (st.kind) {
      case StepKind::kCycleDup: {
        if (st.face_walks.size() != 2) throw GlobalInconsistency("cycle-gluing", level);
        FaceMatch m1 = match_face(faces, st.face_walks[0]);
        FaceMatch m2 = match_face(faces, st.face_walks[1]);
        if (m1.sense == 0 || m2.sense == 0) throw GlobalInconsistency("face", level);
        int d1 = cyclic_direction(copies(0), st.face_walks[0]);
        int d2 = cyclic_direction(copies(1), st.face_walks[1]);
        if (d1 == 0 || d2 == 0 || m1.sense != sense_ || m2.sense != sense_ || d1 != -d2) {
          throw GlobalInconsistency("cycle-gluing", level);
        }
        break;
      }
      case StepKind::kPathDup: {
        if (st.face_walks.size() != 1) throw GlobalInconsistency("path-checking", level);
        FaceMatch m = match_face(faces, st.face_walks[0]);
        if (m.sense != sense_) throw GlobalInconsistency("path-checking", level);
        int d1 = piece_direction(st.face_walks[0], copies(0));
        int d2 = piece_direction(st.face_walks[0], copies(1));
        bool single = st.object.size() == 1;
        if (d1 == 0 || d2 == 0 || (!single && d1 != -d2)) {
          throw GlobalInconsistency("path-checking", level);
        }
        break;
      }
      case StepKind::kCycleDouble: {
        if (st.face_walks.size() != 1) throw GlobalInconsistency("cycle-doubling", level);
        FaceMatch m = match_face(faces, st.face_walks[0]);
        if (m.sense == 0) throw GlobalInconsistency("face", level);
        std::vector<int> doubled = copies(0);
        for (int v : copies(1)) doubled.push_back(v);
        if (cyclic_direction(doubled, st.face_walks[0]) == 0) {
          throw GlobalInconsistency("cycle-doubling", level);
        }
        // Antipodal copies must be passed in opposite rotational senses.
        const BoundaryWalk& w = faces[m.face];
        std::vector<int> state(n_post, 0);
        for (std::size_t i = 0; i < w.size(); ++i) state[w.vertices[i]] = w.states[i];
        for (int v : st.object) {
          int c1 = alpha[v][1];
          if (state[alpha[v][0]] == state[c1]) flip(c1);
        }
        break;
      }
    }
    if (st.walk_seams) seam_of = orient_seams(st, level);
    merge(st, level, n_pre, seam_of);

    EmbeddingScheme pre = build(level);
    const long f_pre = static_cast<long>(trace_faces(pre).size());
    const long dv = n_post - n_pre;
    const long de = post.num_edges() - pre.num_edges();
    const long len = static_cast<long>(st.object.size());
    bool ok = false;
    switch (st.kind) {
      case StepKind::kCycleDup:
        ok = dv == len && de == len && f_post - f_pre == 2;
        break;
      case StepKind::kPathDup:
        ok = dv == len && de == len - 1 && f_post - f_pre == -1;
        break;
      case StepKind::kCycleDouble:
        ok = dv == len && de == len && f_post - f_pre == 1;
        break;
    }
    if (!ok) throw GlobalInconsistency("euler", level);
  }

  void check_splitting(const SurgeryStep& st, int level, int n_pre, int n_post) {
    std::vector<int> seen(n_post, 0);
    std::vector<int> split;
    for (int v = 0; v < n_pre; ++v) {
      const auto& a = st.splitting.alpha[v];
      if (a.empty() || a.size() > 2 || a[0] != v) throw GlobalInconsistency("splitting", level);
      for (int c : a) {
        if (c < 0 || c >= n_post || seen[c]++) throw GlobalInconsistency("splitting", level);
      }
      if (a.size() == 2) {
        if (a[1] < n_pre) throw GlobalInconsistency("splitting", level);
        split.push_back(v);
      }
    }
    if (std::count(seen.begin(), seen.end(), 1) != n_post) {
      throw GlobalInconsistency("splitting", level);
    }
    std::vector<int> obj = st.object;
    std::sort(obj.begin(), obj.end());
    if (obj != split || std::adjacent_find(obj.begin(), obj.end()) != obj.end()) {
      throw GlobalInconsistency(st.kind == StepKind::kPathDup ? "path-checking" : "splitting",
                                level);
    }
    parent_ = st.splitting.parent_map(n_post);
  }

  // Rotation-order seams for walk seams: the created face passes the copy
  // from `before` to `after`, and its orientation state there decides the
  // order in the current rotation.
  std::map<int, Seam> orient_seams(const SurgeryStep& st, int level) const {
    const auto faces = trace_faces(build(level));
    std::map<int, Seam> out;
    for (const Seam& s : st.seams) {
      for (const auto& walk : st.face_walks) {
        FaceMatch m = match_face(faces, walk);
        if (m.face < 0 || out.count(s.v)) continue;
        const BoundaryWalk& w = faces[m.face];
        const int dir = cyclic_direction(w.vertices, walk);
        const std::size_t n = w.size();
        for (std::size_t i = 0; i < n; ++i) {
          if (w.vertices[i] != s.v) continue;
          const int prev = w.vertices[(i + n - 1) % n];
          const int next = w.vertices[(i + 1) % n];
          const bool hit = dir > 0 ? prev == s.before && next == s.after
                                   : prev == s.after && next == s.before;
          if (!hit) continue;
          out[s.v] = w.states[i] > 0 ? Seam{s.v, prev, next} : Seam{s.v, next, prev};
          break;
        }
      }
      if (!out.count(s.v)) throw GlobalInconsistency("seam", level);
    }
    return out;
  }

  void make_positive(int level) {
    auto switches = orientation_switches(build(level));
    if (!switches) throw GlobalInconsistency("orientation", level);
    for (int v : *switches) flip(v);
  }

  void flip(int v) {
    cur_.switch_vertex(v);
    flipped_[v] ^= 1;
  }

  std::vector<int> cut(int c, const std::map<int, Seam>& seam_of, int level) const {
    auto it = seam_of.find(c);
    if (it == seam_of.end()) throw GlobalInconsistency("seam", level);
    const auto& r = cur_.rot[c];
    int pos = cur_.position(c, it->second.before);
    const int deg = static_cast<int>(r.size());
    if (pos < 0 || r[(pos + 1) % deg] != it->second.after) throw GlobalInconsistency("seam", level);
    std::vector<int> seq;
    for (int i = 1; i <= deg; ++i) seq.push_back(parent_[r[(pos + i) % deg]]);
    return seq;
  }

  void merge(const SurgeryStep& st, int level, int n_pre, std::map<int, Seam>& seam_of) {
    // Seams were recorded on the unswitched stage.
    for (auto& [v, seam] : seam_of) {
      if (flipped_[v] && !st.walk_seams) std::swap(seam.before, seam.after);
    }
    Sheet pre;
    pre.ids.assign(cur_.ids.begin(), cur_.ids.begin() + n_pre);
    pre.rot.resize(n_pre);
    pre.tag.resize(n_pre);
    for (int v = 0; v < n_pre; ++v) {
      const auto& a = st.splitting.alpha[v];
      std::vector<int> r;
      if (a.size() == 1) {
        for (int w : cur_.rot[v]) r.push_back(parent_[w]);
      } else {
        std::vector<int> s1 = cut(a[0], seam_of, level);
        std::vector<int> s2 = cut(a[1], seam_of, level);
        if (!s2.empty() && s1.back() == s2.front()) s2.erase(s2.begin());
        if (!s2.empty() && s2.back() == s1.front()) s2.pop_back();
        r = s1;
        r.insert(r.end(), s2.begin(), s2.end());
      }
      std::vector<int> sorted = r;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
          std::binary_search(sorted.begin(), sorted.end(), v)) {
        throw GlobalInconsistency("seam", level);
      }
      pre.rot[v] = std::move(r);
      pre.tag[v].assign(pre.rot[v].size(), -1);
    }
    std::map<std::pair<int, int>, int> sign;
    for (int a = 0; a < cur_.n(); ++a) {
      for (int b : cur_.rot[a]) {
        if (a > b) continue;
        auto key = std::minmax(parent_[a], parent_[b]);
        int sg = cur_.sign(a, b);
        auto [it, fresh] = sign.emplace(key, sg);
        if (!fresh && it->second != sg) throw GlobalInconsistency("seam", level);
      }
    }
    for (auto [key, sg] : sign) {
      if (sg < 0) pre.neg.insert(key);
    }
    cur_ = std::move(pre);
    std::vector<char> flips(n_pre);
    for (int v = 0; v < n_pre; ++v) flips[v] = flipped_[v];
    flipped_ = std::move(flips);
  }

  const UnfoldingTrace& t_;
  Sheet cur_;
  int sense_ = 1;
  std::vector<int> parent_;
  std::vector<char> flipped_;  // switched relative to the recorded stage
};

}  // namespace

EmbeddingScheme refold(const UnfoldingTrace& trace) {
  if (trace.embeddings.empty()) throw GlobalInconsistency("structure", 0);
  return Refolder(trace).run();
}

}  // namespace bgpls
