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

#ifndef METPROG_DSL_HPP
#define METPROG_DSL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metprog/diagnostic.hpp"
#include "metprog/model.hpp"

namespace metprog {

enum class SpanKind {
  module,
  org_goal,
  goal,
  metric,
  input,
  output,
  og_pair,
  gm_pair,
  connection,
  connection_pair,
};

// Modules and connections are keyed by declaration index so duplicated
// declarations keep their own locations.
struct EntityKey {
  SpanKind kind = SpanKind::module;
  std::size_t index = 0;
  std::string a, b, c, d;

  friend auto operator<=>(const EntityKey&, const EntityKey&) = default;
};

class SpanIndex {
 public:
  SpanIndex() = default;
  explicit SpanIndex(std::string file) : file_(std::move(file)) {}

  void add(EntityKey key, SourceSpan span);
  std::optional<SourceSpan> find(const EntityKey& key) const;
  std::size_t size() const { return spans_.size(); }
  const std::string& file() const { return file_; }

  // Lookups fall back to the start of the file for entities that were not
  // produced by the parser (programmatically built or derived programs).
  SourceSpan module(std::size_t module_index) const;
  SourceSpan entity(SpanKind kind, std::size_t module_index,
                    const Identifier& id) const;
  SourceSpan input(std::size_t module_index, const MetricRef& ref) const;
  SourceSpan pair(SpanKind kind, std::size_t module_index,
                  const Derivation& pair) const;
  SourceSpan connection(std::size_t connection_index) const;
  SourceSpan connection_pair(std::size_t connection_index,
                             const ConnectionPair& pair) const;

  static EntityKey module_key(std::size_t module_index);
  static EntityKey entity_key(SpanKind kind, std::size_t module_index,
                              const Identifier& id);
  static EntityKey input_key(std::size_t module_index, const MetricRef& ref);
  static EntityKey pair_key(SpanKind kind, std::size_t module_index,
                            const Derivation& pair);
  static EntityKey connection_key(std::size_t connection_index);
  static EntityKey connection_pair_key(std::size_t connection_index,
                                       const ConnectionPair& pair);

 private:
  SourceSpan lookup(const EntityKey& key) const;

  std::string file_;
  std::map<EntityKey, SourceSpan> spans_;
};

struct ParseResult {
  std::string file;
  std::optional<Program> program;  // present iff no error diagnostics
  std::vector<Diagnostic> diagnostics;
  SpanIndex spans;
};

// Parse errors: P001 unexpected token, P002 duplicate declaration in one
// scope, P003 malformed relation arrow. Parsing resumes at the next
// top-level item after an error. Cross-module references are left for the
// validator.
ParseResult parse(std::string_view text, const std::string& file = "<input>");

// Canonical text: modules in declaration order followed by connections,
// empty sections omitted, 2-space indentation, one relation per line.
// Comments are not preserved.
std::string format(const Program& program);

}  // namespace metprog

#endif  // METPROG_DSL_HPP
