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

#ifndef BGPLS_EMBEDDING_IO_HPP_
#define BGPLS_EMBEDDING_IO_HPP_

#include <istream>
#include <string>

#include "bgpls/embedding.hpp"

namespace bgpls {

// Malformed embedding text. line() is 1-based; 0 for whole-file problems.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg);
  int line() const { return line_; }

 private:
  int line_;
};

// Text format, one record per vertex:
//   v <id> : <neighbour> <neighbour>- ...
// Neighbours appear in rotation order; a trailing '-' marks signature -1 and
// must be given at both endpoints. '#' starts a comment.
EmbeddingScheme parse_embedding(std::istream& in);
EmbeddingScheme parse_embedding_text(const std::string& text);
EmbeddingScheme load_embedding(const std::string& path);

std::string format_embedding(const EmbeddingScheme& s);

}  // namespace bgpls

#endif  // BGPLS_EMBEDDING_IO_HPP_
