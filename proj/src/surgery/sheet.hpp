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


#ifndef BGPLS_SURGERY_SHEET_HPP_
#define BGPLS_SURGERY_SHEET_HPP_

#include <array>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "bgpls/embedding.hpp"

namespace bgpls::detail {

// Mutable rotation system used while cutting. tag[v][p] follows the corner
// between rot[v][p] and its successor; it names a corner of the scheme the
// sheet came from, or -1 for a corner created by a cut.
struct Sheet {
  std::vector<VertexId> ids;
  std::vector<std::vector<int>> rot;
  std::vector<std::vector<int>> tag;
  std::set<std::pair<int, int>> neg;

  static Sheet from_scheme(const EmbeddingScheme& s);

  int n() const { return static_cast<int>(rot.size()); }
  int sign(int u, int w) const;
  int position(int v, int w) const;  // -1 when w is not a neighbour of v
  void switch_vertex(int v);

  // corner_tag, when given, receives the tag of every corner dart.
  EmbeddingScheme build(std::vector<int>* corner_tag = nullptr) const;
};

// Cyclic run of positions of a rotation of size `deg`, from `from` to `to`
// inclusive.
std::vector<int> cyclic_run(int from, int to, int deg);

// Copies of the split vertices, each a run of positions of the sheet's
// rotation. Copy 0 keeps the vertex index; copy 1 is appended in `split`
// order. The corner after the last entry of every copy is new.
struct CopyPlan {
  std::vector<int> split;
  std::vector<std::array<std::vector<int>, 2>> runs;
};

// Given an edge present in both copies of v and of w, returns the copy of w
// matched with copy `c` of v.
using Pairing = std::function<int(int v, int c, int w)>;

struct PlanResult {
  Sheet sheet;
  std::vector<int> parent;          // new vertex -> old vertex
  std::vector<std::array<int, 2>> copy_of;  // old vertex -> new indices (-1 if none)
};

PlanResult apply_plan(const Sheet& s, const CopyPlan& plan, const Pairing& pairing);

}  // namespace bgpls::detail

#endif  // BGPLS_SURGERY_SHEET_HPP_
