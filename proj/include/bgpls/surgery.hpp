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


#ifndef BGPLS_SURGERY_HPP_
#define BGPLS_SURGERY_HPP_

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "bgpls/embedding.hpp"

namespace bgpls {

class SurgeryError : public Error {
 public:
  using Error::Error;
};
class SeparatingCycle : public SurgeryError {
 public:
  using SurgeryError::SurgeryError;
};
class OneSidedCycle : public SurgeryError {
 public:
  using SurgeryError::SurgeryError;
};
class TwoSidedCycle : public SurgeryError {
 public:
  using SurgeryError::SurgeryError;
};
class PathTouchesBoundary : public SurgeryError {
 public:
  using SurgeryError::SurgeryError;
};
class SameFace : public SurgeryError {
 public:
  using SurgeryError::SurgeryError;
};
class NoCycleFound : public SurgeryError {
 public:
  using SurgeryError::SurgeryError;
};
class Stuck : public SurgeryError {
 public:
  using SurgeryError::SurgeryError;
};

// Raised by refold when the recorded unfolding cannot be glued back.
class GlobalInconsistency : public Error {
 public:
  GlobalInconsistency(std::string condition, int stage);
  const std::string& condition() const { return condition_; }
  int stage() const { return stage_; }

 private:
  std::string condition_;
  int stage_;
};

// alpha maps a parent vertex to its child vertices (the first child keeps
// the parent's index); beta maps a parent edge {u, v} (u < v) to the child
// edges between alpha(u) and alpha(v).
struct Splitting {
  std::vector<std::vector<int>> alpha;
  std::vector<std::pair<std::pair<int, int>, std::vector<std::pair<int, int>>>> beta;

  int degree() const;
  std::vector<int> parent_map(int child_count) const;
};

enum class StepKind { kCycleDup, kPathDup, kCycleDouble };
const char* step_kind_name(StepKind k);

// Corner of vertex `v` between neighbours `before` and `after`, in rotation
// order. Vertex indices refer to the post-step graph.
struct Seam {
  int v;
  int before;
  int after;
  bool operator==(const Seam&) const = default;
};

struct SurgeryResult {
  EmbeddingScheme scheme;
  Splitting splitting;
  std::vector<int> corner_origin;  // post-step corner dart -> pre-step corner, -1 if new
  std::vector<Seam> seams;         // the new corner of every copy of a split vertex
  // Walks (post-step vertex indices) of the faces the step creates: the two
  // cycle copies, the doubled cycle, or the merged face.
  std::vector<std::vector<int>> face_walks;
};

// Per-dart face index; corner d lies on face corner_face[d].
std::vector<int> corner_faces(const EmbeddingScheme& s,
                              const std::vector<BoundaryWalk>& faces);

SurgeryResult duplicate_cycle(const EmbeddingScheme& s, const std::vector<int>& cycle);
SurgeryResult double_cycle(const EmbeddingScheme& s, const std::vector<int>& cycle);
// Corners are named by darts leaving path.front() / path.back().
SurgeryResult duplicate_path(const EmbeddingScheme& s, const std::vector<int>& path,
                             int chi_corner, int psi_corner);
SurgeryResult duplicate_path(const EmbeddingScheme& s, const std::vector<int>& path,
                             const BoundaryWalk& chi, const BoundaryWalk& psi);

struct CycleSearchOptions {
  int max_length = 12;
  int candidate_budget = 256;
  long expansion_budget = 200000;
};

std::vector<int> find_non_separating_cycle(const EmbeddingScheme& s, bool want_one_sided,
                                           const CycleSearchOptions& opt = {});

struct ConnectingPath {
  std::vector<int> path;
  int chi_corner = -1;
  int psi_corner = -1;
};

// Shortest path from the boundary of chi to the boundary of psi whose
// interior avoids both; lowest IDs win ties.
ConnectingPath find_connecting_path(const EmbeddingScheme& s, const std::vector<int>& corner_face,
                                    int chi, int psi);

struct SurgeryStep {
  StepKind kind = StepKind::kCycleDup;
  int index = 0;             // 1-based within its kind
  std::vector<int> object;   // pre-step vertex indices
  Splitting splitting;
  std::vector<int> corner_origin;
  std::vector<Seam> seams;
  std::vector<std::vector<int>> face_walks;
  std::vector<int> created_faces;  // labels; PathDup lists {kept, absorbed}
  // Post-step vertices switched after the surgery so that every signature is
  // +1. Seams and walks refer to the scheme before these switches.
  std::vector<int> switched;
  // When set, each seam names the predecessor and successor of the copy on
  // the created face, walked in the direction of the special walk, instead
  // of a rotation order.
  bool walk_seams = false;
};

struct UnfoldingTrace {
  SurfaceKind surface;  // of the input
  int m = 0;            // cycle doublings
  int kprime = 0;       // cycle duplications
  std::vector<EmbeddingScheme> embeddings;
  std::vector<std::vector<int>> face_labels;  // per stage and corner: special face or 0
  std::vector<SurgeryStep> steps;
  std::vector<int> special_walk;  // B* in the last stage, as vertex indices
  BoundaryWalk special_face;      // the traced face behind special_walk

  int depth() const { return static_cast<int>(steps.size()); }
  int special_faces() const { return m + 2 * kprime; }
  const EmbeddingScheme& final_scheme() const { return embeddings.back(); }
};

UnfoldingTrace unfold(const EmbeddingScheme& s, const CycleSearchOptions& opt = {});

// Glues the unfolding back, using only the last stage, B*, and the step
// records. Throws GlobalInconsistency when a gluing condition fails.
EmbeddingScheme refold(const UnfoldingTrace& trace);

void write_trace(std::ostream& out, const UnfoldingTrace& trace);
std::string format_trace(const UnfoldingTrace& trace);

}  // namespace bgpls

#endif  // BGPLS_SURGERY_HPP_
