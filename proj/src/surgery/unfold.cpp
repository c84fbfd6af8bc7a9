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

#include "bgpls/surgery.hpp"

namespace bgpls {

namespace {

// Switches v and renames the corners at v in the per-corner arrays: the
// corner named d becomes the corner named by d's old successor.
void switch_tracked(EmbeddingScheme& s, int v, std::vector<std::vector<int>*> per_corner) {
  std::vector<std::pair<int, int>> rename;
  for (int d : s.rotation(v)) rename.emplace_back(d, s.next(d));
  for (auto* arr : per_corner) {
    std::vector<int> old = *arr;
    for (auto [d, nd] : rename) (*arr)[nd] = old[d];
  }
  s.switch_vertex(v);
}

std::vector<int> make_positive(EmbeddingScheme& s, std::vector<std::vector<int>*> per_corner) {
  auto switches = orientation_switches(s);
  if (!switches) throw Error("scheme is not orientable");
  for (int v : *switches) switch_tracked(s, v, per_corner);
  return *switches;
}

struct Pipeline {
  UnfoldingTrace t;
  EmbeddingScheme cur;
  std::vector<int> labels;
  int next_label = 1;

  void push(StepKind kind, int index, std::vector<int> object, SurgeryResult r,
            std::vector<int> created) {
    SurgeryStep step;
    step.kind = kind;
    step.index = index;
    step.object = std::move(object);
    step.splitting = std::move(r.splitting);
    step.corner_origin = std::move(r.corner_origin);
    step.seams = std::move(r.seams);
    step.face_walks = std::move(r.face_walks);
    step.created_faces = std::move(created);
    cur = std::move(r.scheme);
    std::vector<int> next(cur.num_darts(), 0);
    for (int d = 0; d < cur.num_darts(); ++d) {
      if (step.corner_origin[d] >= 0) next[d] = labels[step.corner_origin[d]];
    }
    labels = std::move(next);
    t.steps.push_back(std::move(step));
  }

  // Gives every corner of each created face the label of its recorded walk.
  void label_new_faces(const std::vector<int>& labels_for_faces) {
    const auto faces = trace_faces(cur);
    const auto cf = corner_faces(cur, faces);
    const SurgeryStep& step = t.steps.back();
    std::vector<int> face_label(faces.size(), -1);
    for (int d = 0; d < cur.num_darts(); ++d) {
      if (step.corner_origin[d] >= 0) continue;
      int f = cf[d];
      if (face_label[f] < 0) {
        // Faces are matched to labels through the recorded walks.
        for (std::size_t i = 0; i < step.face_walks.size(); ++i) {
          const auto& w = step.face_walks[i];
          if (same_cycle(faces[f].vertices, w) ||
              same_cycle(faces[f].vertices, std::vector<int>(w.rbegin(), w.rend()))) {
            face_label[f] = labels_for_faces[i];
          }
        }
        if (face_label[f] < 0) throw Error("created face has no recorded walk");
      }
    }
    for (int d = 0; d < cur.num_darts(); ++d) {
      if (face_label[cf[d]] >= 0) labels[d] = face_label[cf[d]];
    }
  }

  static bool same_cycle(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (std::equal(a.begin() + r, a.end(), b.begin()) &&
          std::equal(a.begin(), a.begin() + r, b.begin() + (a.size() - r))) {
        return true;
      }
    }
    return false;
  }

  void snapshot() {
    t.embeddings.push_back(cur);
    t.face_labels.push_back(labels);
  }
};

}  // namespace

UnfoldingTrace unfold(const EmbeddingScheme& s, const CycleSearchOptions& opt) {
  Pipeline p;
  p.t.surface = euler_genus(s);
  p.cur = s;
  p.labels.assign(s.num_darts(), 0);
  if (p.t.surface.orientable) make_positive(p.cur, {});
  p.snapshot();
  if (p.t.surface.genus == 0) return std::move(p.t);

  while (!is_orientable(p.cur)) {
    std::vector<int> d = find_non_separating_cycle(p.cur, true, opt);
    SurgeryResult r = double_cycle(p.cur, d);
    int label = p.next_label++;
    p.push(StepKind::kCycleDouble, ++p.t.m, d, std::move(r), {label});
    p.label_new_faces({label});
    if (is_orientable(p.cur)) {
      SurgeryStep& step = p.t.steps.back();
      step.switched = make_positive(p.cur, {&step.corner_origin, &p.labels});
    }
    p.snapshot();
  }
  while (euler_genus(p.cur).genus > 0) {
    std::vector<int> c = find_non_separating_cycle(p.cur, false, opt);
    SurgeryResult r = duplicate_cycle(p.cur, c);
    int l1 = p.next_label++;
    int l2 = p.next_label++;
    p.push(StepKind::kCycleDup, ++p.t.kprime, c, std::move(r), {l1, l2});
    p.label_new_faces({l1, l2});
    p.snapshot();
  }
  const int specials = p.next_label - 1;
  for (int j = 2; j <= specials; ++j) {
    const auto faces = trace_faces(p.cur);
    const auto cf = corner_faces(p.cur, faces);
    int chi = -1, psi = -1;
    for (int d = 0; d < p.cur.num_darts(); ++d) {
      if (p.labels[d] == 1) chi = cf[d];
      if (p.labels[d] == j) psi = cf[d];
    }
    if (chi < 0 || psi < 0) throw Stuck("special face lost during reduction");
    ConnectingPath cp = find_connecting_path(p.cur, cf, chi, psi);
    SurgeryResult r = duplicate_path(p.cur, cp.path, cp.chi_corner, cp.psi_corner);
    p.push(StepKind::kPathDup, j - 1, cp.path, std::move(r), {1, j});
    p.label_new_faces({1});
    p.snapshot();
  }
  const auto faces = trace_faces(p.cur);
  const auto cf = corner_faces(p.cur, faces);
  for (int d = 0; d < p.cur.num_darts(); ++d) {
    if (p.labels[d] == 1) {
      const BoundaryWalk& w = faces[cf[d]];
      p.t.special_face = w.states.front() > 0 ? w : reversed(p.cur, w);
      break;
    }
  }
  p.t.special_walk = p.t.special_face.vertices;
  if (euler_genus(p.cur).genus != 0 || !is_orientable(p.cur)) {
    throw Stuck("unfolding did not reach the sphere");
  }
  return std::move(p.t);
}

}  // namespace bgpls
