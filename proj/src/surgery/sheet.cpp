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


#include "sheet.hpp"

#include <algorithm>

namespace bgpls::detail {

Sheet Sheet::from_scheme(const EmbeddingScheme& s) {
  Sheet sh;
  sh.ids = s.ids();
  sh.rot.resize(s.num_vertices());
  sh.tag.resize(s.num_vertices());
  for (int v = 0; v < s.num_vertices(); ++v) {
    for (int d : s.rotation(v)) {
      sh.rot[v].push_back(s.head(d));
      sh.tag[v].push_back(d);
    }
  }
  for (int e = 0; e < s.num_edges(); ++e) {
    if (s.sign(e) < 0) {
      auto [a, b] = s.ends(e);
      sh.neg.insert(std::minmax(a, b));
    }
  }
  return sh;
}

int Sheet::sign(int u, int w) const {
  return neg.count(std::minmax(u, w)) ? -1 : 1;
}

int Sheet::position(int v, int w) const {
  auto it = std::find(rot[v].begin(), rot[v].end(), w);
  return it == rot[v].end() ? -1 : static_cast<int>(it - rot[v].begin());
}

void Sheet::switch_vertex(int v) {
  const int deg = static_cast<int>(rot[v].size());
  std::vector<int> r(deg), t(deg);
  for (int q = 0; q < deg; ++q) {
    r[q] = rot[v][deg - 1 - q];
    t[q] = tag[v][((deg - 2 - q) % deg + deg) % deg];
  }
  rot[v] = std::move(r);
  tag[v] = std::move(t);
  for (int w : rot[v]) {
    auto key = std::minmax(v, w);
    if (!neg.erase(key)) neg.insert(key);
  }
}

EmbeddingScheme Sheet::build(std::vector<int>* corner_tag) const {
  std::vector<std::pair<int, int>> negative(neg.begin(), neg.end());
  EmbeddingScheme s = EmbeddingScheme::from_rotation(ids, rot, negative);
  if (corner_tag) {
    corner_tag->assign(s.num_darts(), -1);
    for (int v = 0; v < n(); ++v) {
      const auto& r = s.rotation(v);
      for (std::size_t p = 0; p < r.size(); ++p) (*corner_tag)[r[p]] = tag[v][p];
    }
  }
  return s;
}

std::vector<int> cyclic_run(int from, int to, int deg) {
  std::vector<int> run;
  for (int p = from;; p = (p + 1) % deg) {
    run.push_back(p);
    if (p == to) break;
  }
  return run;
}

PlanResult apply_plan(const Sheet& s, const CopyPlan& plan, const Pairing& pairing) {
  const int n = s.n();
  const int extra = static_cast<int>(plan.split.size());
  PlanResult out;
  out.copy_of.assign(n, {-1, -1});
  out.parent.resize(n + extra);
  for (int v = 0; v < n; ++v) {
    out.copy_of[v][0] = v;
    out.parent[v] = v;
  }
  // owner[v][p] is a bitmask of the copies of v that contain position p.
  std::vector<std::vector<int>> owner(n);
  for (int v = 0; v < n; ++v) owner[v].assign(s.rot[v].size(), 1);
  std::vector<int> split_slot(n, -1);
  for (int i = 0; i < extra; ++i) {
    int v = plan.split[i];
    if (split_slot[v] >= 0) throw Error("vertex split twice in one step");
    split_slot[v] = i;
    out.copy_of[v][1] = n + i;
    out.parent[n + i] = v;
    std::fill(owner[v].begin(), owner[v].end(), 0);
    for (int c = 0; c < 2; ++c) {
      for (int p : plan.runs[i][c]) owner[v][p] |= 1 << c;
    }
    for (int mask : owner[v]) {
      if (mask == 0) throw Error("copy plan drops an edge");
    }
  }

  Sheet& t = out.sheet;
  t.ids = s.ids;
  VertexId next_id = s.ids.empty() ? 1 : s.ids.back() + 1;
  for (int i = 0; i < extra; ++i) t.ids.push_back(next_id++);
  t.rot.assign(n + extra, {});
  t.tag.assign(n + extra, {});

  auto target = [&](int v, int c, int p) {
    int w = s.rot[v][p];
    int q = s.position(w, v);
    int mask = owner[w][q];
    int cw;
    if (mask == 3) {
      cw = pairing(v, c, w);
    } else {
      cw = mask == 1 ? 0 : 1;
    }
    return out.copy_of[w][cw];
  };
  auto emit = [&](int v, int c, const std::vector<int>& run, bool cut) {
    int nv = out.copy_of[v][c];
    for (std::size_t j = 0; j < run.size(); ++j) {
      t.rot[nv].push_back(target(v, c, run[j]));
      bool last = j + 1 == run.size();
      t.tag[nv].push_back(cut && last ? -1 : s.tag[v][run[j]]);
    }
  };
  for (int v = 0; v < n; ++v) {
    if (split_slot[v] >= 0) {
      for (int c = 0; c < 2; ++c) emit(v, c, plan.runs[split_slot[v]][c], true);
    } else {
      std::vector<int> all(s.rot[v].size());
      for (std::size_t p = 0; p < all.size(); ++p) all[p] = static_cast<int>(p);
      emit(v, 0, all, false);
    }
  }
  for (int a = 0; a < n + extra; ++a) {
    for (int b : t.rot[a]) {
      if (a < b && s.sign(out.parent[a], out.parent[b]) < 0) t.neg.insert({a, b});
    }
  }
  return out;
}

}  // namespace bgpls::detail
