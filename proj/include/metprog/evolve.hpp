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

#ifndef METPROG_EVOLVE_HPP
#define METPROG_EVOLVE_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "metprog/model.hpp"

namespace metprog {

// Connection relation pairs that still name a measurement goal of a module
// that became organizational, and so must be re-sourced to one of its
// organizational goals.
struct ResourcingItem {
  Identifier from;
  Identifier to;
  ConnectionPair pair;

  friend bool operator==(const ResourcingItem&, const ResourcingItem&) = default;
};

struct PromoteResult {
  Program program;
  std::vector<ResourcingItem> worklist;
};

// Makes regular module `id` organizational with the given Γ and G(Γ). G, M,
// inputs, outputs and all connections are kept as they are; outgoing
// relations are not rewritten but listed in the worklist.
// Throws Error when `id` is unknown or already organizational, when
// `new_org_goals` is empty or clashes with the module's names, or when a
// pair references something other than a new organizational goal and an
// existing measurement goal.
PromoteResult promote(const Program& program, const Identifier& id,
                      const std::vector<Goal>& new_org_goals,
                      const std::vector<Derivation>& og_pairs);

inline constexpr std::string_view kPlaceholderPrefix = "TODO: elicited from metric ";

// A regular module reverse-engineered from existing metrics: every metric is
// an output and gets one placeholder goal `g_<metric>`.
// Throws Error for an empty list or duplicate metric ids.
Module skeleton_from_metrics(const std::vector<Identifier>& metric_ids,
                             const Identifier& module_id);

struct ModuleChange {
  Identifier module;
  std::vector<std::string> changes;  // one line per field-level change
  Module updated;

  friend bool operator==(const ModuleChange&, const ModuleChange&) = default;
};

struct ConnectionChange {
  Identifier from;
  Identifier to;
  std::vector<std::string> changes;
  Connection updated;

  friend bool operator==(const ConnectionChange&, const ConnectionChange&) = default;
};

using ConnectionId = std::pair<Identifier, Identifier>;

struct ProgramDiff {
  std::optional<std::pair<Identifier, Identifier>> renamed;  // (old, new)
  std::vector<Module> added_modules;      // declaration order of `new`
  std::set<Identifier> removed_modules;
  std::vector<ModuleChange> changed_modules;
  std::vector<Connection> added_connections;
  std::set<ConnectionId> removed_connections;
  std::vector<ConnectionChange> changed_connections;

  bool empty() const;
  std::set<Identifier> added_module_ids() const;
  std::set<ConnectionId> added_connection_ids() const;
  // Every module named by the diff, including connection endpoints.
  std::set<Identifier> touched_modules() const;
};

// Modules are matched by id and connections by (from, to); duplicated ids
// are matched by their first declaration.
ProgramDiff diff(const Program& old_program, const Program& new_program);

// Applies a diff produced by diff(old, new) to `old`. The result is
// equivalent() to `new`.
Program apply_diff(const Program& old_program, const ProgramDiff& diff);

// Equality up to the order of modules and connections.
bool equivalent(const Program& a, const Program& b);

}  // namespace metprog

#endif  // METPROG_EVOLVE_HPP
