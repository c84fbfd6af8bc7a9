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

#include "bgpls/embedding_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace bgpls {

ParseError::ParseError(int line, const std::string& msg)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
      line_(line) {}

namespace {

struct Record {
  int line;
  VertexId id;
  std::vector<std::pair<VertexId, int>> darts;  // (neighbour, sign)
};

bool parse_id(const std::string& tok, VertexId* out) {
  if (tok.empty() || tok.size() > 19) return false;
  VertexId v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<VertexId>(c - '0');
  }
  *out = v;
  return true;
}

std::vector<std::string> tokenize(std::string line) {
  for (char& c : line) {
    if (c == ',' || c == '\t' || c == '\r') c = ' ';
  }
  std::string spaced;
  for (char c : line) {
    if (c == ':') {
      spaced += " : ";
    } else {
      spaced += c;
    }
  }
  std::istringstream ss(spaced);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

EmbeddingScheme parse_embedding(std::istream& in) {
  std::vector<Record> records;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    if (toks[0] != "v") throw ParseError(lineno, "expected record 'v <id> : ...'");
    if (toks.size() < 3 || toks[2] != ":") {
      throw ParseError(lineno, "expected ':' after vertex id");
    }
    Record r{lineno, 0, {}};
    if (!parse_id(toks[1], &r.id)) {
      throw ParseError(lineno, "bad vertex id '" + toks[1] + "'");
    }
    for (std::size_t i = 3; i < toks.size(); ++i) {
      std::string t = toks[i];
      int sgn = 1;
      if (!t.empty() && (t.back() == '-' || t.back() == '+')) {
        sgn = t.back() == '-' ? -1 : 1;
        t.pop_back();
      }
      VertexId w;
      if (!parse_id(t, &w)) throw ParseError(lineno, "bad neighbour '" + toks[i] + "'");
      r.darts.emplace_back(w, sgn);
    }
    records.push_back(std::move(r));
  }
  if (records.empty()) throw ParseError(0, "no vertex records");

  std::map<VertexId, const Record*> by_id;
  for (const auto& r : records) {
    if (!by_id.emplace(r.id, &r).second) {
      throw ParseError(r.line, "vertex " + std::to_string(r.id) + " declared twice");
    }
  }
  const auto n = static_cast<VertexId>(records.size());
  std::vector<VertexId> ids;
  for (const auto& [id, r] : by_id) {
    if (id < 1 || id > std::max<VertexId>(1, n * n)) {
      throw ParseError(r->line, "vertex id " + std::to_string(id) +
                                    " outside [1, n^2]");
    }
    ids.push_back(id);
  }
  auto index = [&ids](VertexId id) {
    return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) -
                            ids.begin());
  };

  std::vector<std::vector<int>> rotation(ids.size());
  std::map<std::pair<VertexId, VertexId>, std::pair<int, int>> seen;  // sign, line
  std::vector<std::pair<int, int>> negative;
  for (const auto& [id, r] : by_id) {
    int v = index(id);
    for (auto [w, sgn] : r->darts) {
      if (w == id) throw ParseError(r->line, "self-loop at " + std::to_string(id));
      if (!by_id.count(w)) {
        throw ParseError(r->line, "neighbour " + std::to_string(w) + " has no record");
      }
      if (std::find(rotation[v].begin(), rotation[v].end(), index(w)) !=
          rotation[v].end()) {
        throw ParseError(r->line, "neighbour " + std::to_string(w) + " repeated");
      }
      rotation[v].push_back(index(w));
      auto key = std::minmax(id, w);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen[key] = {sgn, r->line};
        if (sgn < 0) negative.emplace_back(v, index(w));
      } else if (it->second.first != sgn) {
        throw ParseError(r->line, "conflicting signature on edge {" +
                                      std::to_string(key.first) + "," +
                                      std::to_string(key.second) + "}");
      }
    }
  }
  for (const auto& [id, r] : by_id) {
    for (auto [w, sgn] : r->darts) {
      const Record* other = by_id.at(w);
      bool back = std::any_of(other->darts.begin(), other->darts.end(),
                              [id = id](const auto& p) { return p.first == id; });
      if (!back) {
        throw ParseError(other->line, "vertex " + std::to_string(w) +
                                          " does not list neighbour " +
                                          std::to_string(id));
      }
    }
  }
  EmbeddingScheme s = EmbeddingScheme::from_rotation(ids, rotation, negative);
  if (!s.graph().connected()) throw ParseError(0, "graph is not connected");
  return s;
}

EmbeddingScheme parse_embedding_text(const std::string& text) {
  std::istringstream in(text);
  return parse_embedding(in);
}

EmbeddingScheme load_embedding(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return parse_embedding(in);
}

std::string format_embedding(const EmbeddingScheme& s) {
  std::ostringstream out;
  out << "# n=" << s.num_vertices() << " m=" << s.num_edges() << "\n";
  for (int v = 0; v < s.num_vertices(); ++v) {
    out << "v " << s.id(v) << " :";
    for (int d : s.rotation(v)) {
      out << ' ' << s.id(s.head(d));
      if (s.sign(d >> 1) < 0) out << '-';
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace bgpls
