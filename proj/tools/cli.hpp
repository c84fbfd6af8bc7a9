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


#ifndef BGPLS_TOOLS_CLI_HPP_
#define BGPLS_TOOLS_CLI_HPP_

#include <iosfwd>

namespace bgpls {

enum ExitCode : int {
  kExitOk = 0,
  kExitReject = 1,
  kExitInput = 2,
  kExitInternal = 3,
};

// Runs the command line; reports go to `out` unless --out names a file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bgpls

#endif  // BGPLS_TOOLS_CLI_HPP_
