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

#ifndef BGPLS_HISTORIES_RULES_HPP_
#define BGPLS_HISTORIES_RULES_HPP_

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "bgpls/histories.hpp"
#include "level_index.hpp"

namespace bgpls::detail {

// A footprint whose avatar sets are replaced by node keys of its level.
template <class K>
struct FpT {
  K x{}, y{}, z{};
  EdgeType in, out;
  auto operator<=>(const FpT&) const = default;
};

// Ctx provides, for nodes at child level `level`:
//   K up(int level, K node)          parent key
//   bool split(int level, K node)    the parent has two children
//   bool siblings(int level, K a, K b)
template <class K, class Ctx>
FpT<K> lift(const Ctx& ctx, int level, const FpT<K>& f, K parent) {
  return {ctx.up(level, f.x), parent, ctx.up(level, f.z), f.in, f.out};
}

// Products of `rule` applied to f1 (child 0) and f2 (child 1) at child level
// `level`, or nullopt when shape or types do not fit.
template <class K, class Ctx>
std::optional<std::vector<FpT<K>>> apply_rule(const Ctx& ctx, const Schedule& sch, int level,
                                              K parent, Rule rule, bool swapped,
                                              const FpT<K>& f1, const FpT<K>& f2) {
  const StepKind kind = sch.kind(level);
  const int index = sch.index(level);
  const EdgeType t1 = primed(kind, index, 0);
  const EdgeType t2 = primed(kind, index, 1);
  auto is_new = [&](EdgeType t) { return sch.creation_level(t) == level; };
  auto up = [&](K k) { return ctx.up(level, k); };
  auto split = [&](K k) { return ctx.split(level, k); };
  auto siblings = [&](K a, K b) { return ctx.siblings(level, a, b); };
  const K a = f1.x, b = f1.z, c = f2.x, d = f2.z;
  std::vector<FpT<K>> out;
  switch (rule) {
    case Rule::kElementary: {
      if (!siblings(a, d) || !siblings(b, c)) return std::nullopt;
      bool fwd = f1.in == t1 && f1.out == t1 && f2.in == t2 && f2.out == t2;
      bool bwd = f1.in == t2 && f1.out == t2 && f2.in == t1 && f2.out == t1;
      if (!fwd && !bwd) return std::nullopt;
      return out;
    }
    case Rule::kCrossCap:
      if (!siblings(a, c) || !siblings(b, d)) return std::nullopt;
      if (f1.in != t1 || f1.out != t1 || f2.in != t1 || f2.out != t1) return std::nullopt;
      return out;
    case Rule::kSingleExtremity: {
      auto pair_ok = [&](EdgeType p, EdgeType q) {
        return (p == t1 && q == t2) || (p == t2 && q == t1);
      };
      if (!swapped) {
        if (!siblings(b, c) || split(a) || split(d)) return std::nullopt;
        if (!pair_ok(f1.out, f2.in) || is_new(f1.in) || is_new(f2.out)) return std::nullopt;
        out.push_back({up(a), parent, up(d), f1.in, f2.out});
      } else {
        if (!siblings(a, d) || split(b) || split(c)) return std::nullopt;
        if (!pair_ok(f1.in, f2.out) || is_new(f2.in) || is_new(f1.out)) return std::nullopt;
        out.push_back({up(c), parent, up(b), f2.in, f1.out});
      }
      return out;
    }
    case Rule::kDoubleExtremity:
      if (split(a) || split(b) || split(c) || split(d)) return std::nullopt;
      if (is_new(f1.in) || is_new(f1.out) || is_new(f2.in) || is_new(f2.out)) {
        return std::nullopt;
      }
      out.push_back({up(a), parent, up(d), f1.in, f2.out});
      out.push_back({up(c), parent, up(b), f2.in, f1.out});
      return out;
    case Rule::kNone:
      break;
  }
  return std::nullopt;
}

template <class K>
struct SplitMatch {
  int count = 0;  // distinct rule applications explaining the parent
  Rule rule = Rule::kNone;
  bool swapped = false;
  FpT<K> used[2];
};

// Rule applications at a binary node `parent` (children at `level`) that
// turn the children's sorted footprints f0, f1 into the parent's.
template <class K, class Ctx>
SplitMatch<K> match_split(const Ctx& ctx, const Schedule& sch, int level, K parent,
                          const std::vector<FpT<K>>& f0, const std::vector<FpT<K>>& f1,
                          const std::vector<FpT<K>>& want) {
  std::vector<Rule> rules;
  switch (sch.kind(level)) {
    case StepKind::kCycleDup:
      rules = {Rule::kElementary};
      break;
    case StepKind::kPathDup:
      rules = {Rule::kElementary, Rule::kSingleExtremity, Rule::kDoubleExtremity};
      break;
    case StepKind::kCycleDouble:
      rules = {Rule::kCrossCap};
      break;
  }
  std::set<std::tuple<Rule, FpT<K>, FpT<K>>> distinct;
  SplitMatch<K> m;
  for (Rule rule : rules) {
    for (bool swapped : {false, true}) {
      if (swapped && rule != Rule::kSingleExtremity) continue;
      for (std::size_t i = 0; i < f0.size(); ++i) {
        if (i > 0 && f0[i] == f0[i - 1]) continue;
        for (std::size_t j = 0; j < f1.size(); ++j) {
          if (j > 0 && f1[j] == f1[j - 1]) continue;
          auto produced = apply_rule(ctx, sch, level, parent, rule, swapped, f0[i], f1[j]);
          if (!produced) continue;
          std::vector<FpT<K>> all = *produced;
          for (std::size_t k = 0; k < f0.size(); ++k) {
            if (k != i) all.push_back(lift(ctx, level, f0[k], parent));
          }
          for (std::size_t k = 0; k < f1.size(); ++k) {
            if (k != j) all.push_back(lift(ctx, level, f1[k], parent));
          }
          std::sort(all.begin(), all.end());
          if (all != want) continue;
          if (distinct.empty()) {
            m.rule = rule;
            m.swapped = swapped;
            m.used[0] = f0[i];
            m.used[1] = f1[j];
          }
          distinct.emplace(rule, f0[i], f1[j]);
        }
      }
    }
  }
  m.count = static_cast<int>(distinct.size());
  return m;
}

}  // namespace bgpls::detail

#endif  // BGPLS_HISTORIES_RULES_HPP_
