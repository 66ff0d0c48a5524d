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

#ifndef METPROG_MODEL_HPP
#define METPROG_MODEL_HPP

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metprog/identifier.hpp"

namespace metprog {

enum class ObjectKind { product, process, resource, organization };
enum class ModuleKind { regular, organizational };

std::string_view to_string(ObjectKind kind);
std::string_view to_string(ModuleKind kind);
std::optional<ObjectKind> parse_object_kind(std::string_view text);

// Used for both measurement goals and organizational goals.
struct Goal {
  Identifier id;
  std::optional<std::string> description;
  std::optional<std::string> question;

  friend bool operator==(const Goal&, const Goal&) = default;
};

struct Metric {
  Identifier id;
  std::optional<std::string> description;

  friend bool operator==(const Metric&, const Metric&) = default;
};

// An input metric, optionally qualified with the module producing it.
struct MetricRef {
  std::optional<Identifier> module;
  Identifier metric;

  std::string str() const;
  friend bool operator==(const MetricRef&, const MetricRef&) = default;
};

// Relation pair (a, b): `derived` is derived from the need to achieve
// `purpose`; in execution order `purpose` depends on `derived`.
struct Derivation {
  Identifier derived;
  Identifier purpose;

  friend auto operator<=>(const Derivation&, const Derivation&) = default;
  friend bool operator==(const Derivation&, const Derivation&) = default;
};

enum class EntityKind { none, goal, org_goal, metric };

struct Module {
  Identifier id;
  ModuleKind kind = ModuleKind::regular;
  std::vector<ObjectKind> objects;
  std::vector<MetricRef> inputs;
  std::vector<Identifier> outputs;
  std::vector<Goal> org_goals;        // Γ
  std::vector<Goal> goals;            // G
  std::vector<Metric> metrics;        // M
  std::vector<Derivation> og_relation;  // G(Γ): (org goal, goal)
  std::vector<Derivation> gm_relation;  // G(M): (metric, goal)

  bool is_organizational() const { return kind == ModuleKind::organizational; }

  const Goal* find_goal(const Identifier& id) const;
  const Goal* find_org_goal(const Identifier& id) const;
  const Metric* find_metric(const Identifier& id) const;
  EntityKind kind_of(const Identifier& id) const;

  friend bool operator==(const Module&, const Module&) = default;
};

// One pair of a connection relation: goal `used_goal` of the used module is
// derived from the need to achieve `using_ref` of the using module. The
// module qualifiers are kept as written so ownership can be checked.
struct ConnectionPair {
  Identifier used_module;
  Identifier used_goal;
  Identifier using_module;
  Identifier using_ref;

  friend auto operator<=>(const ConnectionPair&, const ConnectionPair&) = default;
  friend bool operator==(const ConnectionPair&, const ConnectionPair&) = default;
};

// ⟨from, to⟩: `from` uses `to`.
struct Connection {
  Identifier from;
  Identifier to;
  std::vector<ConnectionPair> relation;

  friend bool operator==(const Connection&, const Connection&) = default;
};

struct Program {
  Identifier name;
  std::vector<Module> modules;
  std::vector<Connection> connections;

  // First declaration wins when ids are duplicated.
  const Module* find_module(const Identifier& id) const;
  Module* find_module(const Identifier& id);
  const Connection* find_connection(const Identifier& from,
                                    const Identifier& to) const;

  friend bool operator==(const Program&, const Program&) = default;
};

struct GoalRef {
  Identifier module;
  Identifier goal;

  friend auto operator<=>(const GoalRef&, const GoalRef&) = default;
  friend bool operator==(const GoalRef&, const GoalRef&) = default;
};

ModuleKind module_kind_from_objects(std::span<const ObjectKind> objects);

struct WellDefinedness {
  bool ok = true;
  std::vector<std::string> violations;
};

// G and M must be nonempty; Γ must be nonempty for organizational modules.
// Outputs may be empty.
WellDefinedness is_well_defined(const Module& module);

// Modules that no valid connection uses. Self-connections and connections
// with unknown endpoints are ignored.
std::set<Identifier> root_modules(const Program& program);

struct ProgramCheck {
  bool is_program = false;
  std::vector<GoalRef> unjustified;  // sorted
};

// A goal is justified when it can be traced back to the organizational
// goals of a root organizational module, which are taken as axioms.
// Computed as the least fixpoint of the justification rules.
ProgramCheck is_program(const Program& program);

}  // namespace metprog

#endif  // METPROG_MODEL_HPP
