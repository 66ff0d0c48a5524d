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

#include "metprog/diagnostic.hpp"

#include <algorithm>
#include <tuple>

namespace metprog {

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::error:
      return "error";
    case Severity::warning:
      return "warning";
    case Severity::note:
      return "note";
  }
  return "error";
}

Severity severity_for_code(std::string_view code) {
  if (!code.empty()) {
    if (code.front() == 'W') return Severity::warning;
    if (code.front() == 'N') return Severity::note;
  }
  return Severity::error;
}

Diagnostic make_diagnostic(std::string code, std::string message,
                           SourceSpan span, std::vector<SourceSpan> related) {
  Diagnostic d;
  d.severity = severity_for_code(code);
  d.code = std::move(code);
  d.message = std::move(message);
  d.span = std::move(span);
  d.related = std::move(related);
  return d;
}

void sort_diagnostics(std::vector<Diagnostic>& diagnostics) {
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return std::tie(a.span.file, a.span.line, a.span.column) <
                            std::tie(b.span.file, b.span.line, b.span.column);
                   });
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(
      diagnostics.begin(), diagnostics.end(),
      [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.span.file + ":" + std::to_string(d.span.line) + ":" +
                    std::to_string(d.span.column) + ": ";
  out += to_string(d.severity);
  out += ": " + d.code + " " + d.message;
  return out;
}

}  // namespace metprog
