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

#ifndef METPROG_DIAGNOSTIC_HPP
#define METPROG_DIAGNOSTIC_HPP

#include <string>
#include <string_view>
#include <vector>

namespace metprog {

struct SourceSpan {
  std::string file;
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  int length = 0;

  friend auto operator<=>(const SourceSpan&, const SourceSpan&) = default;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { error, warning, note };

std::string_view to_string(Severity severity);

// Codes: P0xx parse errors, E0xx validation errors, W1xx lint warnings,
// N2xx informational notes.
struct Diagnostic {
  std::string code;
  Severity severity = Severity::error;
  std::string message;
  SourceSpan span;
  std::vector<SourceSpan> related;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Severity implied by the code's leading letter.
Severity severity_for_code(std::string_view code);

Diagnostic make_diagnostic(std::string code, std::string message,
                           SourceSpan span, std::vector<SourceSpan> related = {});

// Stable sort by (file, line, column); ties keep emission order.
void sort_diagnostics(std::vector<Diagnostic>& diagnostics);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// "file:line:col: severity: CODE message"
std::string format_diagnostic(const Diagnostic& diagnostic);

}  // namespace metprog

#endif  // METPROG_DIAGNOSTIC_HPP
