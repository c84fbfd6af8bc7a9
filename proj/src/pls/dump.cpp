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
#include <ostream>

#include "bgpls/pls.hpp"

namespace bgpls {

std::size_t max_certificate_bits(const CertificateAssignment& a) {
  std::size_t out = 0;
  for (const BitString& b : a.certs) out = std::max(out, b.size());
  return out;
}

void write_certificate_dump(std::ostream& out, const Graph& g, const CertificateAssignment& a) {
  out << "certificates " << g.n() << " max_bits " << max_certificate_bits(a) << "\n";
  for (int v = 0; v < g.n(); ++v) {
    const BitString& bits = a.certs.at(v);
    out << "node " << g.ids[v] << " bits " << bits.size() << "\n";
    try {
      const NodeCertificate c = decode_certificate(bits);
      const CertGlobals& gl = c.globals;
      out << "  claim " << (gl.claim.orientable ? "T" : "P") << gl.claim.k << " m " << gl.m
          << " kprime " << gl.kprime << " darts " << gl.darts << " root " << gl.planar_root.id
          << "." << gl.planar_root.j << "\n";
      out << "  shape";
      for (int k : c.shape) out << " " << k;
      out << "\n  leaf_dist";
      for (auto d : c.leaf_dist) out << " " << d;
      out << "\n  trees";
      for (const TreeFragment& t : c.trees) out << " " << t.parent << "/" << t.dist;
      out << "\n";
      for (const EdgePayload& e : c.hosted) {
        out << "  edge " << e.other << " pairs " << e.pairs.size() << " links " << e.links.size()
            << "\n";
      }
    } catch (const DecodeError& e) {
      out << "  undecodable: " << e.what() << "\n";
    }
    out << "  hex " << bits.hex() << "\n";
  }
}

void write_verdicts(std::ostream& out, const Graph& g, const VerifierReport& r) {
  for (int v = 0; v < g.n(); ++v) {
    const Verdict& d = r.verdicts.at(v);
    out << g.ids[v] << " " << (d.accept() ? "accept" : "reject");
    if (!d.accept()) out << " " << reason_name(d.reason) << " " << d.detail;
    out << "\n";
  }
}

}  // namespace bgpls
