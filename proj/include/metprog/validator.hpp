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

#ifndef METPROG_VALIDATOR_HPP
#define METPROG_VALIDATOR_HPP

#include <cstddef>
#include <vector>

#include "metprog/diagnostic.hpp"
#include "metprog/dsl.hpp"
#include "metprog/model.hpp"

namespace metprog {

struct ValidateOptions {
  // Reports E008 with warning severity, for designs whose metrics are not
  // defined yet.
  bool allow_abstract_goals = false;
};

// Completeness and high-level correctness checks. Structural rules
// (E001-E006, E016) run first; semantic rules (E007, E008, E010-E014) skip
// entities that are structurally broken. The result is sorted by location;
// an empty list means the program is complete.
//
//   E001 duplicate module id          E008 goal without derived metric
//   E002 unknown connection endpoint  E010 unjustified goal
//   E003 self-connection              E011 relation pair of the wrong kind
//   E004 uses-graph cycle             E012 pair endpoint owned by another module
//   E005 module not well defined      E013 unresolvable/ambiguous input
//   E006 reference to unknown id      E014 regular module at the top level
//   E007 metric without goal          E016 duplicate connection
std::vector<Diagnostic> validate(const ParseResult& parsed,
                                 const ValidateOptions& options = {});
std::vector<Diagnostic> validate(const Program& program,
                                 const SpanIndex& spans = {},
                                 const ValidateOptions& options = {});

// Only the rules that make the uses-graph well formed: E001-E004, E016.
std::vector<Diagnostic> validate_structure(const Program& program,
                                           const SpanIndex& spans = {});

// Checks one connection's relation against its setup, which depends only
// on the kind of the using module: organizational users pair used goals
// with their organizational goals, regular users with their measurement
// goals. Emits E006/E011/E012, and W106 for an empty relation.
std::vector<Diagnostic> check_connection_setup(const Program& program,
                                               std::size_t connection_index,
                                               const SpanIndex& spans = {});
std::vector<Diagnostic> check_connection_setup(const Connection& connection,
                                               const Program& program);

// Regular modules used by no other module (E014).
std::vector<Diagnostic> check_regular_roots(const Program& program,
                                            const SpanIndex& spans = {});

}  // namespace metprog

#endif  // METPROG_VALIDATOR_HPP
