// Copyright 2026 The metprog Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef METPROG_CLI_HPP
#define METPROG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace metprog::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kFindings = 1,  // error-severity diagnostics
  kUsage = 2,     // bad arguments or unreadable files
};

// Runs one command line (without the program name). Artifacts go to `out`,
// human-readable diagnostics and usage text to `err`. Input file "-" reads
// `in`.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace metprog::cli

#endif  // METPROG_CLI_HPP
