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


#include "cli.hpp"

#include <array>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bgpls/embedding.hpp"
#include "bgpls/embedding_io.hpp"
#include "bgpls/generate.hpp"
#include "bgpls/pls.hpp"
#include "bgpls/surgery.hpp"

namespace bgpls {
namespace {

struct Options {
  std::string input;
  std::string out;
  std::string dump;
  std::string verdicts;
  std::optional<int> k;
  bool automatic = false;
  bool nonorientable = false;
  int count = 1000;
  std::uint64_t seed = 1;
  int n = 16;
  int genus = 0;
  std::vector<int> sizes = {16, 64, 256, 1024};
  int seeds = 5;
};

const char* orientation_word(bool orientable) { return orientable ? "orientable" : "non-orientable"; }

void write_surface(std::ostream& out, const SurfaceKind& k) {
  out << orientation_word(k.orientable) << ", " << (k.orientable ? "genus " : "demigenus ")
      << k.genus << ", faces " << k.faces << '\n';
}

std::ofstream open_file(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ParseError(0, "cannot write " + path);
  return f;
}

Claim claim_for(const Options& o, const SurfaceKind& surface) {
  if (o.k && !o.automatic) return {*o.k, !o.nonorientable};
  return {surface.genus, surface.orientable};
}

int cmd_genus(const Options& o, std::ostream& out) {
  const auto s = load_embedding(o.input);
  const auto k = euler_genus(s);
  out << "vertices " << s.num_vertices() << '\n';
  out << "edges " << s.num_edges() << '\n';
  out << "faces " << k.faces << '\n';
  out << "surface " << k.label() << '\n';
  write_surface(out, k);
  return kExitOk;
}

int cmd_unfold(const Options& o, std::ostream& out) {
  const auto s = load_embedding(o.input);
  const auto trace = unfold(s);
  out << "surface " << trace.surface.label() << '\n';
  out << "doublings " << trace.m << '\n';
  out << "duplications " << trace.kprime << '\n';
  out << "stages " << trace.depth() << '\n';
  out << "stage 0 input " << euler_genus(trace.embeddings[0]).label() << '\n';
  for (int i = 0; i < trace.depth(); ++i) {
    const auto& st = trace.steps[i];
    out << "stage " << i + 1 << ' ' << step_kind_name(st.kind) << ' ' << st.index << ' '
        << euler_genus(trace.embeddings[i + 1]).label() << '\n';
  }
  out << "special_walk " << trace.special_walk.size() << '\n';
  if (!o.dump.empty()) {
    auto f = open_file(o.dump);
    write_trace(f, trace);
  }
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  const auto s = load_embedding(o.input);
  const Graph g = s.graph();
  validate(g);
  const auto surface = euler_genus(s);
  const Claim claim = claim_for(o, surface);
  const auto a = prove(g, s, claim);
  const auto report = run_verifier(g, a);
  const auto central = centralized_check(g, a);
  if (central.accept() != report.accepted()) {
    throw Error("distributed and centralized decisions differ");
  }
  out << "surface " << surface.label() << '\n';
  out << "claim k=" << claim.k << ' ' << orientation_word(claim.orientable) << '\n';
  out << "nodes " << g.n() << " accept " << g.n() - report.rejecting() << " reject "
      << report.rejecting() << '\n';
  std::map<std::string, int> reasons;
  for (const auto& v : report.verdicts) {
    if (!v.accept()) ++reasons[reason_name(v.reason)];
  }
  for (const auto& [r, c] : reasons) out << "reason " << r << ' ' << c << '\n';
  const std::size_t bits = max_certificate_bits(a);
  out << "max_bits " << bits << '\n';
  out << "bits_per_log_n " << static_cast<double>(bits) / bits_for(g.n() > 1 ? g.n() - 1 : 1)
      << '\n';
  out << "verdict " << (report.accepted() ? "accept" : "reject") << '\n';
  if (!o.dump.empty()) {
    auto f = open_file(o.dump);
    write_certificate_dump(f, g, a);
  }
  if (!o.verdicts.empty()) {
    auto f = open_file(o.verdicts);
    write_verdicts(f, g, report);
  }
  return report.accepted() ? kExitOk : kExitReject;
}

int cmd_fuzz(const Options& o, std::ostream& out) {
  const auto s = load_embedding(o.input);
  const Graph g = s.graph();
  validate(g);
  const auto surface = euler_genus(s);
  const auto a = prove(g, s, claim_for(o, surface));
  if (!run_verifier(g, a).accepted()) throw Error("honest certificates rejected");
  const auto rep = fuzz(g, a, o.count, o.seed);
  std::array<int, kMutationCount> tried{}, rejected{};
  std::map<std::string, int> reasons;
  for (const auto& c : rep.cases) {
    const auto op = static_cast<int>(c.op);
    ++tried[op];
    if (!c.distributed_accept) {
      ++rejected[op];
      ++reasons[reason_name(c.reason)];
    }
  }
  out << "seed " << o.seed << '\n';
  out << "mutations " << rep.cases.size() << '\n';
  for (int op = 0; op < kMutationCount; ++op) {
    if (tried[op] == 0) continue;
    out << "op " << mutation_name(static_cast<Mutation>(op)) << ' ' << rejected[op] << '/'
        << tried[op] << '\n';
  }
  for (const auto& [r, c] : reasons) out << "reason " << r << ' ' << c << '\n';
  const int rejected_total = static_cast<int>(rep.cases.size()) - rep.accepted();
  out << "rejected " << rejected_total << '/' << rep.cases.size() << '\n';
  out << "disagreements " << rep.disagreements() << '\n';
  if (!o.verdicts.empty()) {
    auto f = open_file(o.verdicts);
    for (std::size_t i = 0; i < rep.cases.size(); ++i) {
      const auto& c = rep.cases[i];
      f << i << ' ' << mutation_name(c.op) << ' ' << (c.distributed_accept ? "accept" : "reject")
        << ' ' << (c.central_accept ? "accept" : "reject") << ' ' << reason_name(c.reason) << '\n';
    }
  }
  return rep.accepted() == 0 && rep.disagreements() == 0 ? kExitOk : kExitReject;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const bool orientable = !o.nonorientable;
  const int min_n = min_random_embedding_size(o.genus, orientable);
  if (o.n < min_n) {
    throw ParseError(0, "--n must be at least " + std::to_string(min_n) + " for this surface");
  }
  out << format_embedding(random_embedding(o.n, o.genus, orientable, o.seed));
  return kExitOk;
}

// Max certificate bits over `seeds` random instances per size, against
// ceil(log2 n).
int cmd_size(const Options& o, std::ostream& out) {
  const bool orientable = !o.nonorientable;
  out << "n log2n max_bits ratio\n";
  double lo = 0, hi = 0;
  bool all_accept = true;
  for (std::size_t i = 0; i < o.sizes.size(); ++i) {
    const int n = o.sizes[i];
    if (n < min_random_embedding_size(o.genus, orientable)) {
      throw ParseError(0, "size " + std::to_string(n) + " too small for this surface");
    }
    std::size_t bits = 0;
    for (int j = 0; j < o.seeds; ++j) {
      const auto s = random_embedding(n, o.genus, orientable, o.seed + 1000 * i + j);
      const Graph g = s.graph();
      const auto k = euler_genus(s);
      const auto a = prove(g, s, {k.genus, k.orientable});
      all_accept = all_accept && run_verifier(g, a).accepted();
      bits = std::max(bits, max_certificate_bits(a));
    }
    const int log_n = bits_for(n - 1);
    const double ratio = static_cast<double>(bits) / log_n;
    lo = i == 0 ? ratio : std::min(lo, ratio);
    hi = i == 0 ? ratio : std::max(hi, ratio);
    out << n << ' ' << log_n << ' ' << bits << ' ' << ratio << '\n';
  }
  out << "ratio_range " << lo << ' ' << hi << '\n';
  out << "all_accept " << (all_accept ? "yes" : "no") << '\n';
  return all_accept ? kExitOk : kExitReject;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof-labeling schemes for graphs embedded on bounded-genus surfaces"};
  app.require_subcommand(1);
  Options o;

  auto* genus = app.add_subcommand("genus", "Print the surface of an embedding");
  auto* unfold_cmd = app.add_subcommand("unfold", "Cut the surface down to the plane");
  auto* certify = app.add_subcommand("certify", "Prove, verify and report certificate sizes");
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Run a mutation campaign against honest certificates");
  auto* gen = app.add_subcommand("gen", "Generate a random embedding");
  auto* size = app.add_subcommand("size", "Certificate size across random instances");

  for (auto* c : {genus, unfold_cmd, certify, fuzz_cmd}) {
    c->add_option("input", o.input, "Embedding file")->required();
  }
  for (auto* c : {genus, unfold_cmd, certify, fuzz_cmd, gen, size}) {
    c->add_option("--out", o.out, "Write the report here instead of standard output");
  }
  unfold_cmd->add_option("--trace", o.dump, "Write the unfolding trace");
  for (auto* c : {certify, fuzz_cmd}) {
    auto* k = c->add_option("--k", o.k, "Claimed (demi)genus bound")->check(CLI::NonNegativeNumber);
    c->add_flag("--auto", o.automatic, "Claim the surface of the input")->excludes(k);
    c->add_flag("--nonorientable", o.nonorientable, "Claim a non-orientable surface");
  }
  certify->add_option("--dump", o.dump, "Write the certificate dump");
  certify->add_option("--verdicts", o.verdicts, "Write the per-node verdicts");
  fuzz_cmd->add_option("--count", o.count, "Number of mutations")->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--seed", o.seed, "Campaign seed");
  fuzz_cmd->add_option("--cases", o.verdicts, "Write one line per mutation");
  gen->add_option("--n", o.n, "Vertices")->required()->check(CLI::PositiveNumber);
  gen->add_option("--genus", o.genus, "(Demi)genus")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", o.seed, "Seed");
  gen->add_flag("--nonorientable", o.nonorientable, "Non-orientable surface");
  size->add_option("--genus", o.genus, "(Demi)genus")->check(CLI::NonNegativeNumber);
  size->add_option("--sizes", o.sizes, "Vertex counts")->check(CLI::PositiveNumber);
  size->add_option("--seeds", o.seeds, "Instances per size")->check(CLI::PositiveNumber);
  size->add_option("--seed", o.seed, "Base seed");
  size->add_flag("--nonorientable", o.nonorientable, "Non-orientable surface");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    std::unique_ptr<std::ofstream> file;
    if (!o.out.empty()) file = std::make_unique<std::ofstream>(open_file(o.out));
    std::ostream& report = file ? *file : out;
    if (*genus) return cmd_genus(o, report);
    if (*unfold_cmd) return cmd_unfold(o, report);
    if (*certify) return cmd_certify(o, report);
    if (*fuzz_cmd) return cmd_fuzz(o, report);
    if (*gen) return cmd_gen(o, report);
    return cmd_size(o, report);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvalidGraph& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace bgpls
