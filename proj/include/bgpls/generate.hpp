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

#ifndef BGPLS_GENERATE_HPP_
#define BGPLS_GENERATE_HPP_

#include <cstdint>

#include "bgpls/embedding.hpp"

namespace bgpls {

// splitmix64; bounded draws use rejection so output is identical on every
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Random 2-cell embedding with n vertices on T_genus (orientable) or
// P_genus. A random planar triangulation grows by face and edge insertions;
// handles are added by identifying two triangular faces (with a twist in the
// non-orientable case). Odd demigenus starts from a projective K6 summand.
// IDs are a random permutation of 1..n.
EmbeddingScheme random_embedding(int n, int genus, bool orientable,
                                 std::uint64_t seed);

// Minimum n accepted by random_embedding for the given surface.
int min_random_embedding_size(int genus, bool orientable);

}  // namespace bgpls

#endif  // BGPLS_GENERATE_HPP_
