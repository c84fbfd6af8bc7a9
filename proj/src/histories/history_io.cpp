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


#include <istream>
#include <ostream>
#include <sstream>

#include "bgpls/histories.hpp"

namespace bgpls {

std::string type_name(EdgeType t) {
  const std::string i = std::to_string(t.index);
  switch (t.kind) {
    case TypeKind::kCPrime:
      return "C'" + i;
    case TypeKind::kCSecond:
      return "C''" + i;
    case TypeKind::kPPrime:
      return "P'" + i;
    case TypeKind::kPSecond:
      return "P''" + i;
    case TypeKind::kDPrime:
      return "D'" + i;
    case TypeKind::kNone:
      break;
  }
  return "-";
}

EdgeType parse_type(const std::string& s) {
  if (s == "-") return {};
  if (s.size() < 3 || s[1] != '\'') throw Error("bad edge type: " + s);
  const bool second = s[2] == '\'';
  const std::string digits = s.substr(second ? 3 : 2);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw Error("bad edge type: " + s);
  }
  const int index = std::stoi(digits);
  switch (s[0]) {
    case 'C':
      return {second ? TypeKind::kCSecond : TypeKind::kCPrime, index};
    case 'P':
      return {second ? TypeKind::kPSecond : TypeKind::kPPrime, index};
    case 'D':
      if (!second) return {TypeKind::kDPrime, index};
      break;
    default:
      break;
  }
  throw Error("bad edge type: " + s);
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::kElementary:
      return "elementary";
    case Rule::kSingleExtremity:
      return "single-extremity";
    case Rule::kDoubleExtremity:
      return "double-extremity";
    case Rule::kCrossCap:
      return "cross-cap";
    case Rule::kNone:
      break;
  }
  return "vacancy";
}

namespace {

std::string avatar_text(const Avatar& a) { return std::to_string(a.id) + "." + std::to_string(a.j); }

std::string set_text(const AvatarSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += avatar_text(s[i]);
  }
  return out + "}";
}

Avatar parse_avatar(const std::string& s) {
  const auto dot = s.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == s.size()) {
    throw Error("bad avatar: " + s);
  }
  try {
    std::size_t used = 0;
    Avatar a{std::stoull(s.substr(0, dot), &used), 0};
    if (used != dot) throw Error("bad avatar: " + s);
    a.j = std::stoi(s.substr(dot + 1), &used);
    if (used != s.size() - dot - 1) throw Error("bad avatar: " + s);
    return a;
  } catch (const std::logic_error&) {
    throw Error("bad avatar: " + s);
  }
}

AvatarSet parse_set(const std::string& s) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw Error("bad avatar set: " + s);
  AvatarSet out;
  std::stringstream in(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_avatar(item));
  return out;
}

template <typename T>
T take(std::istringstream& in, const char* what) {
  T v;
  if (!(in >> v)) throw Error(std::string("history text: missing ") + what);
  return v;
}

}  // namespace

void write_histories(std::ostream& out, const HistoryCollection& hc) {
  const Schedule& s = hc.schedule;
  out << "histories " << s.m << " " << s.kprime << " " << s.depth << "\n";
  out << "walk " << hc.walk.size();
  for (const Avatar& a : hc.walk) out << " " << avatar_text(a);
  out << "\n";
  for (const History& h : hc.histories) {
    out << "history " << h.id << " " << h.nodes.size() << "\n";
    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
      const HistoryNode& node = h.nodes[i];
      out << "node " << i << " " << node.level << " " << node.children.size();
      for (int c : node.children) out << " " << c;
      out << "\nS " << set_text(node.s) << "\nN " << node.n.size();
      for (const AvatarSet& a : node.n) out << " " << set_text(a);
      out << "\n";
      for (const Footprint& f : node.f) {
        out << "F " << set_text(f.x) << " " << set_text(f.y) << " " << set_text(f.z) << " "
            << type_name(f.in) << " " << type_name(f.out) << "\n";
      }
    }
  }
  out << "end\n";
}

std::string format_histories(const HistoryCollection& hc) {
  std::ostringstream out;
  write_histories(out, hc);
  return out.str();
}

HistoryCollection read_histories(std::istream& in) {
  HistoryCollection hc;
  std::string line;
  HistoryNode* node = nullptr;
  bool done = false;
  while (!done && std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    const std::string key = take<std::string>(ls, "keyword");
    if (key == "histories") {
      hc.schedule.m = take<int>(ls, "m");
      hc.schedule.kprime = take<int>(ls, "kprime");
      hc.schedule.depth = take<int>(ls, "depth");
    } else if (key == "walk") {
      const auto len = take<std::size_t>(ls, "walk length");
      for (std::size_t i = 0; i < len; ++i) hc.walk.push_back(parse_avatar(take<std::string>(ls, "avatar")));
    } else if (key == "history") {
      History h;
      h.id = take<VertexId>(ls, "vertex ID");
      h.nodes.resize(take<std::size_t>(ls, "node count"));
      hc.histories.push_back(std::move(h));
      node = nullptr;
    } else if (key == "node") {
      if (hc.histories.empty()) throw Error("history text: node outside a history");
      auto& nodes = hc.histories.back().nodes;
      const auto i = take<std::size_t>(ls, "node index");
      if (i >= nodes.size()) throw Error("history text: node index out of range");
      node = &nodes[i];
      node->level = take<int>(ls, "level");
      const auto kids = take<std::size_t>(ls, "child count");
      for (std::size_t c = 0; c < kids; ++c) node->children.push_back(take<int>(ls, "child"));
    } else if (key == "S" || key == "N" || key == "F") {
      if (!node) throw Error("history text: " + key + " outside a node");
      if (key == "S") {
        node->s = parse_set(take<std::string>(ls, "avatar set"));
      } else if (key == "N") {
        const auto count = take<std::size_t>(ls, "neighbour count");
        for (std::size_t c = 0; c < count; ++c) node->n.push_back(parse_set(take<std::string>(ls, "avatar set")));
      } else {
        Footprint f;
        f.x = parse_set(take<std::string>(ls, "X"));
        f.y = parse_set(take<std::string>(ls, "Y"));
        f.z = parse_set(take<std::string>(ls, "Z"));
        f.in = parse_type(take<std::string>(ls, "type"));
        f.out = parse_type(take<std::string>(ls, "type"));
        node->f.push_back(std::move(f));
      }
    } else if (key == "end") {
      done = true;
    } else {
      throw Error("history text: unknown line " + line);
    }
  }
  if (!done) throw Error("history text: missing end");
  return hc;
}

HistoryCollection parse_histories(const std::string& text) {
  std::istringstream in(text);
  return read_histories(in);
}

}  // namespace bgpls
