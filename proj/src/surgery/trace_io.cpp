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


#include <ostream>
#include <sstream>

#include "bgpls/surgery.hpp"

namespace bgpls {

namespace {

void write_ids(std::ostream& out, const EmbeddingScheme& s, const std::vector<int>& vs) {
  for (int v : vs) out << ' ' << s.id(v);
}

}  // namespace

void write_trace(std::ostream& out, const UnfoldingTrace& t) {
  out << "trace " << t.surface.label() << " m " << t.m << " kprime " << t.kprime << " steps "
      << t.depth() << '\n';
  for (std::size_t i = 0; i < t.embeddings.size(); ++i) {
    const EmbeddingScheme& s = t.embeddings[i];
    SurfaceKind k = euler_genus(s);
    out << "stage " << i << " V " << s.num_vertices() << " E " << s.num_edges() << " F "
        << k.faces << " surface " << k.label() << '\n';
  }
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const SurgeryStep& st = t.steps[i];
    const EmbeddingScheme& pre = t.embeddings[i];
    const EmbeddingScheme& post = t.embeddings[i + 1];
    out << "step " << i + 1 << ' ' << step_kind_name(st.kind) << ' ' << st.index << " object";
    write_ids(out, pre, st.object);
    out << '\n';
    for (int v : st.object) {
      out << "  split " << pre.id(v) << " ->";
      write_ids(out, post, st.splitting.alpha[v]);
      out << '\n';
    }
    for (const auto& w : st.face_walks) {
      out << "  face";
      write_ids(out, post, w);
      out << '\n';
    }
    if (!st.switched.empty()) {
      out << "  switched";
      write_ids(out, post, st.switched);
      out << '\n';
    }
    out << "  labels";
    for (int f : st.created_faces) out << ' ' << f;
    out << '\n';
  }
  if (t.depth() > 0) {
    out << "special";
    write_ids(out, t.final_scheme(), t.special_walk);
    out << '\n';
  }
}

std::string format_trace(const UnfoldingTrace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

}  // namespace bgpls
