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


#ifndef BGPLS_HISTORIES_LEVEL_INDEX_HPP_
#define BGPLS_HISTORIES_LEVEL_INDEX_HPP_

#include <map>
#include <vector>

#include "bgpls/histories.hpp"

namespace bgpls::detail {

// The type a step stamps on the edges of copy `slot`.
inline EdgeType primed(StepKind kind, int index, int slot) {
  switch (kind) {
    case StepKind::kCycleDup:
      return {slot == 0 ? TypeKind::kCPrime : TypeKind::kCSecond, index};
    case StepKind::kPathDup:
      return {slot == 0 ? TypeKind::kPPrime : TypeKind::kPSecond, index};
    case StepKind::kCycleDouble:
      return {TypeKind::kDPrime, index};
  }
  return {};
}

struct NodeRef {
  int h = -1;
  int i = -1;
};

// Nodes of a collection grouped by level. Positions are stable indices into
// nodes[level].
struct LevelIndex {
  std::vector<std::vector<NodeRef>> nodes;
  std::vector<std::map<Avatar, int>> owner;  // avatar -> position, per level
  std::vector<std::vector<int>> parent;      // position -> parent position (level >= 1)
  std::vector<std::vector<std::vector<int>>> children;  // positions at level + 1

  // Trusts the tree shape; see check_local_consistency for validation.
  static LevelIndex build(const HistoryCollection& hc);

  // Position of the node whose avatar set is exactly `s`, or -1.
  int find(int level, const AvatarSet& s, const HistoryCollection& hc) const;
  const HistoryNode& node(int level, int pos, const HistoryCollection& hc) const {
    NodeRef r = nodes[level][pos];
    return hc.histories[r.h].nodes[r.i];
  }
  HistoryNode& node(int level, int pos, HistoryCollection& hc) const {
    NodeRef r = nodes[level][pos];
    return hc.histories[r.h].nodes[r.i];
  }
};

}  // namespace bgpls::detail

#endif  // BGPLS_HISTORIES_LEVEL_INDEX_HPP_
