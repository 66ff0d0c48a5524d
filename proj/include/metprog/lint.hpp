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

#ifndef METPROG_LINT_HPP
#define METPROG_LINT_HPP

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "metprog/diagnostic.hpp"
#include "metprog/dsl.hpp"
#include "metprog/model.hpp"

namespace metprog {

// Good-design heuristics. The thresholds are tool defaults, not
// methodology constants; every one can be overridden.
//
//   W101 organizational module at the lowest level
//   W102 too many inputs or outputs
//   W103 too many kinds of objects of measurement
//   W104 regular module measuring an organization
//   W105 output of a non-root module that no user consumes
//   W106 connection with an empty relation
//   W107 isolated module
//   W108 organizational goal not related to any measurement goal
//   N202 goal still carrying a reverse-engineering placeholder
struct LintConfig {
  int max_inputs = 7;
  int max_outputs = 7;
  int max_object_kinds = 2;
  std::set<std::string> enabled = all_codes();

  static std::set<std::string> all_codes();
  bool is_enabled(std::string_view code) const {
    return enabled.count(std::string(code)) != 0;
  }
  void disable(const std::string& code);
};

// Reads `key = value` lines: max_inputs, max_outputs, max_object_kinds and
// `disable = ["W105", ...]`. `#` starts a comment. Values not present keep
// their value from `base`. Throws Error on malformed input.
LintConfig parse_lint_config(std::string_view text, LintConfig base = {});

// Expects a structurally valid program (no E001-E004).
std::vector<Diagnostic> lint(const Program& program, const LintConfig& config = {},
                             const SpanIndex& spans = {});

}  // namespace metprog

#endif  // METPROG_LINT_HPP
