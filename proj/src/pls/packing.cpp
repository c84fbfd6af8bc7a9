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

#include "bgpls/pls.hpp"

namespace bgpls {

std::vector<int> edge_hosts(const Graph& g) {
  const Degeneracy deg = degeneracy_order(g);
  std::vector<int> host;
  for (auto [u, v] : g.edges()) host.push_back(deg.rank[u] < deg.rank[v] ? u : v);
  return host;
}

std::vector<PackedNode> pack_line_certificates(const Graph& g, const std::vector<BitString>& node,
                                               const std::vector<BitString>& edge_payloads) {
  const auto edges = g.edges();
  if (node.size() != static_cast<std::size_t>(g.n()) || edge_payloads.size() != edges.size()) {
    throw Error("payload counts do not match the graph");
  }
  const auto host = edge_hosts(g);
  std::vector<PackedNode> out(g.n());
  for (int v = 0; v < g.n(); ++v) out[v].own = node[v];
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const int h = host[e];
    const int other = edges[e].first == h ? edges[e].second : edges[e].first;
    out[h].hosted.emplace_back(g.ids[other], edge_payloads[e]);
  }
  for (auto& p : out) {
    std::sort(p.hosted.begin(), p.hosted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return out;
}

std::optional<std::map<VertexId, BitString>> recover_edge_payloads(
    VertexId self, const PackedNode& own,
    const std::vector<std::pair<VertexId, const PackedNode*>>& neighbours) {
  std::map<VertexId, BitString> out;
  std::map<VertexId, int> found;
  for (const auto& [w, n] : neighbours) found[w] = 0;
  for (const auto& [other, payload] : own.hosted) {
    auto it = found.find(other);
    if (it == found.end()) return std::nullopt;  // hosted for a non-neighbour
    ++it->second;
    out[other] = payload;
  }
  for (const auto& [w, n] : neighbours) {
    for (const auto& [other, payload] : n->hosted) {
      if (other != self) continue;
      ++found[w];
      out[w] = payload;
    }
  }
  for (const auto& [w, count] : found) {
    if (count != 1) return std::nullopt;
  }
  return out;
}

}  // namespace bgpls
