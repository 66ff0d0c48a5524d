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

#ifndef METPROG_HIERARCHY_HPP
#define METPROG_HIERARCHY_HPP

#include <map>
#include <set>
#include <vector>

#include "metprog/diagnostic.hpp"
#include "metprog/dsl.hpp"
#include "metprog/model.hpp"

namespace metprog {

// Level 0 is the highest level. A module's level is the length of the
// longest uses-path reaching it from a root, so every used module sits
// strictly below all of its users.
struct LevelMap {
  std::map<Identifier, int> levels;
  std::set<Identifier> roots;  // used by no module
  std::set<Identifier> sinks;  // use no module

  friend bool operator==(const LevelMap&, const LevelMap&) = default;
};

// Throws Error("cyclic program") when the uses-graph has a cycle.
// Connections with unknown endpoints and self-connections are ignored.
LevelMap compute_levels(const Program& program);

// The module `root`, every module reachable from it, and the connections
// among them, named `<program>_<root>`. Modules are copied unchanged, so
// inputs produced outside the slice surface as E013.
// Throws Error for an unknown root.
Program extract_subprogram(const Program& program, const Identifier& root);

// W101 for organizational modules at the lowest level, E014 for regular
// modules at the highest level, and an N201 note for every root
// organizational module, each of which could stand as a program on its own.
std::vector<Diagnostic> hierarchy_report(const Program& program,
                                         const SpanIndex& spans = {});

}  // namespace metprog

#endif  // METPROG_HIERARCHY_HPP
