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
#include <deque>
#include <map>
#include <numeric>

#include "bgpls/surgery.hpp"
#include "sheet.hpp"

namespace bgpls {

using detail::CopyPlan;
using detail::cyclic_run;
using detail::PlanResult;
using detail::Sheet;

GlobalInconsistency::GlobalInconsistency(std::string condition, int stage)
    : Error("global inconsistency (" + condition + ") at stage " + std::to_string(stage)),
      condition_(std::move(condition)),
      stage_(stage) {}

int Splitting::degree() const {
  std::size_t d = 0;
  for (const auto& a : alpha) d = std::max(d, a.size());
  return static_cast<int>(d);
}

std::vector<int> Splitting::parent_map(int child_count) const {
  std::vector<int> parent(child_count, -1);
  for (std::size_t v = 0; v < alpha.size(); ++v) {
    for (int c : alpha[v]) parent[c] = static_cast<int>(v);
  }
  return parent;
}

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::kCycleDup:
      return "cycle-dup";
    case StepKind::kPathDup:
      return "path-dup";
    case StepKind::kCycleDouble:
      return "cycle-double";
  }
  return "?";
}

std::vector<int> corner_faces(const EmbeddingScheme& s, const std::vector<BoundaryWalk>& faces) {
  std::vector<int> cf(s.num_darts(), -1);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int c : faces[f].corners) {
      if (cf[c] >= 0) throw Error("corner visited twice by face tracing");
      cf[c] = static_cast<int>(f);
    }
  }
  return cf;
}

namespace {

void require_walk(const EmbeddingScheme& s, const std::vector<int>& w, bool closed,
                  std::size_t min_len) {
  if (w.size() < min_len) throw SurgeryError("object too short");
  std::vector<int> sorted = w;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw SurgeryError("object repeats a vertex");
  }
  for (int v : w) {
    if (v < 0 || v >= s.num_vertices()) throw SurgeryError("object vertex out of range");
  }
  std::size_t links = closed ? w.size() : w.size() - 1;
  for (std::size_t i = 0; i < links; ++i) {
    if (s.find_dart(w[i], w[(i + 1) % w.size()]) < 0) {
      throw SurgeryError("object is not a walk of the graph");
    }
  }
}

// Vertices of the face walked with state +1 at its first vertex.
std::vector<int> positive_walk(const EmbeddingScheme& s, const BoundaryWalk& w) {
  return w.states.front() > 0 ? w.vertices : reversed(s, w).vertices;
}

// Rotates a closed walk so it starts at its first occurrence of `v`.
std::vector<int> start_at(std::vector<int> w, int v) {
  auto it = std::find(w.begin(), w.end(), v);
  if (it != w.end()) std::rotate(w.begin(), it, w.end());
  return w;
}

struct Finished {
  SurgeryResult result;
  std::vector<BoundaryWalk> faces;
  std::vector<int> face_of;  // per corner
};

Finished finish(const PlanResult& pr, const CopyPlan& plan) {
  Finished f;
  SurgeryResult& r = f.result;
  r.scheme = pr.sheet.build(&r.corner_origin);
  const int n_pre = static_cast<int>(pr.copy_of.size());
  r.splitting.alpha.resize(n_pre);
  for (int v = 0; v < n_pre; ++v) {
    r.splitting.alpha[v].push_back(v);
    if (pr.copy_of[v][1] >= 0) r.splitting.alpha[v].push_back(pr.copy_of[v][1]);
  }
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> beta;
  for (int e = 0; e < r.scheme.num_edges(); ++e) {
    auto [a, b] = r.scheme.ends(e);
    beta[std::minmax(pr.parent[a], pr.parent[b])].push_back(std::minmax(a, b));
  }
  for (auto& [k, v] : beta) {
    std::sort(v.begin(), v.end());
    r.splitting.beta.emplace_back(k, v);
  }
  for (int v : plan.split) {
    for (int c = 0; c < 2; ++c) {
      int nv = pr.copy_of[v][c];
      const auto& rot = pr.sheet.rot[nv];
      const auto& tag = pr.sheet.tag[nv];
      const int deg = static_cast<int>(rot.size());
      int p = static_cast<int>(std::find(tag.begin(), tag.end(), -1) - tag.begin());
      r.seams.push_back({nv, rot[p], rot[(p + 1) % deg]});
    }
  }
  f.faces = trace_faces(r.scheme);
  f.face_of = corner_faces(r.scheme, f.faces);
  return f;
}

std::vector<int> faces_with_new_corners(const Finished& f) {
  std::vector<int> out;
  for (int d = 0; d < f.result.scheme.num_darts(); ++d) {
    if (f.result.corner_origin[d] < 0) out.push_back(f.face_of[d]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// The new corner of copy c of v.
int new_corner(const Finished& f, const PlanResult& pr, int v, int c) {
  for (int d : f.result.scheme.rotation(pr.copy_of[v][c])) {
    if (f.result.corner_origin[d] < 0) return d;
  }
  throw Error("copy has no new corner");
}

CopyPlan split_along_cycle(const Sheet& sh, const std::vector<int>& cycle) {
  CopyPlan plan;
  const int len = static_cast<int>(cycle.size());
  for (int i = 0; i < len; ++i) {
    int v = cycle[i];
    int deg = static_cast<int>(sh.rot[v].size());
    int out = sh.position(v, cycle[(i + 1) % len]);
    int in = sh.position(v, cycle[(i + len - 1) % len]);
    plan.split.push_back(v);
    plan.runs.push_back({cyclic_run(out, in, deg), cyclic_run(in, out, deg)});
  }
  return plan;
}

// Switches cycle vertices so the edges v_{i-1} v_i, 1 <= i < len, are +1 and
// returns the sign left on the closing edge.
int straighten(Sheet& sh, const std::vector<int>& walk, bool closed,
               std::vector<int>& switched) {
  for (std::size_t i = 1; i < walk.size(); ++i) {
    if (sh.sign(walk[i - 1], walk[i]) < 0) {
      sh.switch_vertex(walk[i]);
      switched.push_back(walk[i]);
    }
  }
  return closed ? sh.sign(walk.back(), walk.front()) : 1;
}

// Switches both copies of every straightened vertex back, so that merging the
// copies again yields the input scheme itself rather than a switched one.
void restore_gauge(PlanResult& pr, const std::vector<int>& switched) {
  for (int v : switched) {
    for (int c : pr.copy_of[v]) {
      if (c >= 0) pr.sheet.switch_vertex(c);
    }
  }
}

}  // namespace

SurgeryResult duplicate_cycle(const EmbeddingScheme& s, const std::vector<int>& cycle) {
  require_walk(s, cycle, true, 3);
  Sheet sh = Sheet::from_scheme(s);
  std::vector<int> switched;
  if (straighten(sh, cycle, true, switched) < 0) throw OneSidedCycle("cycle has signature -1");
  CopyPlan plan = split_along_cycle(sh, cycle);
  PlanResult pr = apply_plan(sh, plan, [](int, int c, int) { return c; });
  restore_gauge(pr, switched);
  Finished f = finish(pr, plan);
  if (!f.result.scheme.graph().connected()) throw SeparatingCycle("cycle separates the surface");
  const std::size_t faces_before = trace_faces(s).size();
  if (f.faces.size() != faces_before + 2) throw SeparatingCycle("cycle separates the surface");
  int f1 = f.face_of[new_corner(f, pr, cycle[0], 0)];
  int f2 = f.face_of[new_corner(f, pr, cycle[0], 1)];
  if (f1 == f2 || faces_with_new_corners(f).size() != 2) {
    throw SeparatingCycle("cycle copies do not bound two faces");
  }
  f.result.face_walks = {
      start_at(positive_walk(f.result.scheme, f.faces[f1]), pr.copy_of[cycle[0]][0]),
      start_at(positive_walk(f.result.scheme, f.faces[f2]), pr.copy_of[cycle[0]][1])};
  return std::move(f.result);
}

SurgeryResult double_cycle(const EmbeddingScheme& s, const std::vector<int>& cycle) {
  require_walk(s, cycle, true, 3);
  Sheet sh = Sheet::from_scheme(s);
  std::vector<int> switched;
  if (straighten(sh, cycle, true, switched) > 0) throw TwoSidedCycle("cycle has signature +1");
  CopyPlan plan = split_along_cycle(sh, cycle);
  const int first = cycle.front();
  const int last = cycle.back();
  PlanResult pr = apply_plan(sh, plan, [first, last](int v, int c, int w) {
    bool closing = (v == first && w == last) || (v == last && w == first);
    return closing ? 1 - c : c;
  });
  restore_gauge(pr, switched);
  Finished f = finish(pr, plan);
  auto created = faces_with_new_corners(f);
  if (created.size() != 1 || f.faces.size() != trace_faces(s).size() + 1) {
    throw Error("cycle doubling did not produce a single new face");
  }
  f.result.face_walks = {start_at(f.faces[created[0]].vertices, pr.copy_of[first][0])};
  return std::move(f.result);
}

SurgeryResult duplicate_path(const EmbeddingScheme& s, const std::vector<int>& path,
                             int chi_corner, int psi_corner) {
  require_walk(s, path, false, 1);
  if (chi_corner < 0 || chi_corner >= s.num_darts() || psi_corner < 0 ||
      psi_corner >= s.num_darts() || s.origin(chi_corner) != path.front() ||
      s.origin(psi_corner) != path.back()) {
    throw SurgeryError("path endpoints do not match the face corners");
  }
  const auto faces = trace_faces(s);
  const auto cf = corner_faces(s, faces);
  const int chi = cf[chi_corner];
  const int psi = cf[psi_corner];
  if (chi == psi) throw SameFace("path endpoints lie on the same face");
  for (std::size_t t = 1; t + 1 < path.size(); ++t) {
    for (int d : s.rotation(path[t])) {
      if (cf[d] == chi || cf[d] == psi) {
        throw PathTouchesBoundary("interior path vertex lies on a merged face");
      }
    }
  }
  Sheet sh = Sheet::from_scheme(s);
  std::vector<int> switched;
  straighten(sh, path, false, switched);
  auto locate = [&sh](int v, int corner) {
    auto it = std::find(sh.tag[v].begin(), sh.tag[v].end(), corner);
    return static_cast<int>(it - sh.tag[v].begin());
  };
  const int len = static_cast<int>(path.size());
  const int w0 = path.front();
  const int ws = path.back();
  const int a0 = locate(w0, chi_corner);
  const int b = locate(ws, psi_corner);
  CopyPlan plan;
  auto deg = [&sh](int v) { return static_cast<int>(sh.rot[v].size()); };
  if (len == 1) {
    plan.split.push_back(w0);
    plan.runs.push_back({cyclic_run((a0 + 1) % deg(w0), b, deg(w0)),
                         cyclic_run((b + 1) % deg(w0), a0, deg(w0))});
  } else {
    for (int t = 0; t < len; ++t) {
      int v = path[t];
      plan.split.push_back(v);
      if (t == 0) {
        int p = sh.position(v, path[1]);
        plan.runs.push_back({cyclic_run((a0 + 1) % deg(v), p, deg(v)), cyclic_run(p, a0, deg(v))});
      } else if (t + 1 == len) {
        int q = sh.position(v, path[t - 1]);
        plan.runs.push_back({cyclic_run(q, b, deg(v)), cyclic_run((b + 1) % deg(v), q, deg(v))});
      } else {
        int q = sh.position(v, path[t - 1]);
        int p = sh.position(v, path[t + 1]);
        plan.runs.push_back({cyclic_run(q, p, deg(v)), cyclic_run(p, q, deg(v))});
      }
    }
  }
  PlanResult pr = apply_plan(sh, plan, [](int, int c, int) { return c; });
  restore_gauge(pr, switched);
  Finished f = finish(pr, plan);
  auto created = faces_with_new_corners(f);
  if (created.size() != 1 || f.faces.size() + 1 != faces.size()) {
    throw Error("path duplication did not merge the two faces");
  }
  f.result.face_walks = {
      start_at(positive_walk(f.result.scheme, f.faces[created[0]]), pr.copy_of[w0][0])};
  return std::move(f.result);
}

SurgeryResult duplicate_path(const EmbeddingScheme& s, const std::vector<int>& path,
                             const BoundaryWalk& chi, const BoundaryWalk& psi) {
  auto corner_at = [&path](const BoundaryWalk& w, int v) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w.vertices[i] == v) return w.corners[i];
    }
    throw SurgeryError("path endpoint is not on the face boundary");
  };
  if (path.empty()) throw SurgeryError("empty path");
  return duplicate_path(s, path, corner_at(chi, path.front()), corner_at(psi, path.back()));
}

namespace {

bool cycle_works(const EmbeddingScheme& s, const std::vector<int>& c, bool one_sided) {
  int sign = cycle_sign(s, c);
  if (one_sided) return sign < 0;
  if (sign < 0) return false;
  try {
    duplicate_cycle(s, c);
    return true;
  } catch (const SeparatingCycle&) {
    return false;
  }
}

// Simple cycles in increasing length; each is listed once, starting at its
// lowest index with the smaller neighbour second.
class ShortCycles {
 public:
  ShortCycles(const Graph& g, long budget) : g_(g), budget_(budget) {}

  template <typename F>
  bool run(int max_len, F&& accept) {
    for (int len = 3; len <= max_len; ++len) {
      for (int s = 0; s < g_.n(); ++s) {
        path_ = {s};
        on_path_.assign(g_.n(), 0);
        on_path_[s] = 1;
        if (extend(len, accept)) return true;
        if (budget_ < 0) return false;
      }
    }
    return false;
  }

 private:
  template <typename F>
  bool extend(int len, F& accept) {
    if (--budget_ < 0) return false;
    int v = path_.back();
    int s = path_.front();
    if (static_cast<int>(path_.size()) == len) {
      if (path_[1] < path_.back() && g_.has_edge(v, s)) return accept(path_);
      return false;
    }
    for (int w : g_.adj[v]) {
      if (w <= s || on_path_[w]) continue;
      path_.push_back(w);
      on_path_[w] = 1;
      bool done = extend(len, accept);
      on_path_[w] = 0;
      path_.pop_back();
      if (done) return true;
      if (budget_ < 0) return false;
    }
    return false;
  }

  const Graph& g_;
  long budget_;
  std::vector<int> path_;
  std::vector<char> on_path_;
};

std::vector<std::vector<int>> fundamental_cycles(const Graph& g) {
  SpanningTree t = spanning_tree(g, 0);
  std::vector<std::vector<int>> out;
  for (auto [u, v] : g.edges()) {
    if (t.parent[u] == v || t.parent[v] == u) continue;
    std::vector<int> up, down;
    int a = u, b = v;
    while (t.dist[a] > t.dist[b]) up.push_back(a), a = t.parent[a];
    while (t.dist[b] > t.dist[a]) down.push_back(b), b = t.parent[b];
    while (a != b) {
      up.push_back(a), a = t.parent[a];
      down.push_back(b), b = t.parent[b];
    }
    up.push_back(a);
    up.insert(up.end(), down.rbegin(), down.rend());
    out.push_back(std::move(up));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  return out;
}

}  // namespace

std::vector<int> find_non_separating_cycle(const EmbeddingScheme& s, bool want_one_sided,
                                           const CycleSearchOptions& opt) {
  SurfaceKind kind = euler_genus(s);
  if (kind.genus == 0) throw NoCycleFound("surface is a sphere");
  if (want_one_sided && kind.orientable) throw NoCycleFound("no one-sided cycle on an orientable surface");
  const Graph g = s.graph();
  std::vector<int> found;
  int candidates = 0;
  ShortCycles shorts(g, opt.expansion_budget);
  shorts.run(opt.max_length, [&](const std::vector<int>& c) {
    if (++candidates > opt.candidate_budget) return true;
    if (cycle_works(s, c, want_one_sided)) {
      found = c;
      return true;
    }
    return false;
  });
  if (!found.empty()) return found;
  for (const auto& c : fundamental_cycles(g)) {
    if (cycle_works(s, c, want_one_sided)) return c;
  }
  throw NoCycleFound("no suitable cycle among short and fundamental cycles");
}

ConnectingPath find_connecting_path(const EmbeddingScheme& s, const std::vector<int>& corner_face,
                                    int chi, int psi) {
  const int n = s.num_vertices();
  std::vector<char> on_chi(n, 0), on_psi(n, 0);
  for (int d = 0; d < s.num_darts(); ++d) {
    if (corner_face[d] == chi) on_chi[s.origin(d)] = 1;
    if (corner_face[d] == psi) on_psi[s.origin(d)] = 1;
  }
  std::vector<int> parent(n, -2);
  std::deque<int> queue;
  int end = -1;
  for (int v = 0; v < n && end < 0; ++v) {
    if (!on_chi[v]) continue;
    if (on_psi[v]) end = v;
    parent[v] = -1;
    queue.push_back(v);
  }
  const Graph g = s.graph();
  while (end < 0 && !queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : g.adj[u]) {
      if (parent[w] != -2) continue;
      if (on_psi[w]) {
        parent[w] = u;
        end = w;
        break;
      }
      if (on_chi[w]) continue;
      parent[w] = u;
      queue.push_back(w);
    }
  }
  if (end < 0) throw Stuck("faces are not connected");
  ConnectingPath cp;
  for (int v = end; v != -1; v = parent[v]) cp.path.push_back(v);
  std::reverse(cp.path.begin(), cp.path.end());
  auto corner = [&](int v, int face) {
    for (int d : s.rotation(v)) {
      if (corner_face[d] == face) return d;
    }
    throw Stuck("endpoint lost its face corner");
  };
  cp.chi_corner = corner(cp.path.front(), chi);
  cp.psi_corner = corner(cp.path.back(), psi);
  return cp;
}

}  // namespace bgpls
