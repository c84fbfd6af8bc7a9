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


#ifndef BGPLS_PLS_SHAPE_HPP_
#define BGPLS_PLS_SHAPE_HPP_

#include <array>
#include <utility>
#include <vector>

#include "bgpls/pls.hpp"

namespace bgpls::detail {

// A history node named by its owner's ID and its preorder index.
using NodeKey = std::pair<VertexId, int>;

// Tree of a history given by child counts in preorder.
struct Shape {
  std::vector<int> level;
  std::vector<int> parent;                 // -1 at the root
  std::vector<std::array<int, 2>> child;   // -1 when absent
  std::vector<int> kids;
  std::vector<int> leaf_rank;              // -1 for internal nodes
  std::vector<int> leaves;                 // preorder index by rank

  static Shape from_counts(const std::vector<int>& counts) {
    Shape s;
    const int n = static_cast<int>(counts.size());
    s.level.assign(n, 0);
    s.parent.assign(n, -1);
    s.child.assign(n, {-1, -1});
    s.kids = counts;
    s.leaf_rank.assign(n, -1);
    // Preorder: the next node is the first child of the last node that still
    // needs one.
    std::vector<int> open;
    for (int i = 0; i < n; ++i) {
      if (i > 0) {
        while (!open.empty()) {
          const int p = open.back();
          const int slot = s.child[p][0] < 0 ? 0 : 1;
          if (slot < counts[p]) {
            s.child[p][slot] = i;
            s.parent[i] = p;
            s.level[i] = s.level[p] + 1;
            if (slot + 1 == counts[p]) open.pop_back();
            break;
          }
          open.pop_back();
        }
      }
      if (counts[i] == 0) {
        s.leaf_rank[i] = static_cast<int>(s.leaves.size());
        s.leaves.push_back(i);
      } else {
        open.push_back(i);
      }
    }
    return s;
  }

  int size() const { return static_cast<int>(level.size()); }
  bool binary(int i) const { return kids[i] == 2; }

  int ancestor(int i, int at_level) const {
    while (i >= 0 && level[i] > at_level) i = parent[i];
    return i;
  }

  // Avatar indices (j - 1) of the leaves below node i.
  std::vector<int> leaf_span(int i) const {
    std::vector<int> out;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      if (kids[u] == 0) out.push_back(leaf_rank[u]);
      for (int k = kids[u] - 1; k >= 0; --k) stack.push_back(child[u][k]);
    }
    return out;
  }
};

}  // namespace bgpls::detail

#endif  // BGPLS_PLS_SHAPE_HPP_
