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

#include "metprog/model.hpp"

#include <algorithm>
#include <array>

namespace metprog {

namespace {

constexpr std::array<std::pair<ObjectKind, std::string_view>, 4> kObjectNames{{
    {ObjectKind::product, "product"},
    {ObjectKind::process, "process"},
    {ObjectKind::resource, "resource"},
    {ObjectKind::organization, "organization"},
}};

template <typename T>
const T* find_by_id(const std::vector<T>& items, const Identifier& id) {
  auto it = std::find_if(items.begin(), items.end(),
                         [&](const T& item) { return item.id == id; });
  return it == items.end() ? nullptr : &*it;
}

bool contains(const std::set<GoalRef>& set, const Identifier& module,
              const Identifier& goal) {
  return set.count(GoalRef{module, goal}) != 0;
}

}  // namespace

std::string_view to_string(ObjectKind kind) {
  for (const auto& [k, name] : kObjectNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::string_view to_string(ModuleKind kind) {
  return kind == ModuleKind::organizational ? "organizational" : "regular";
}

std::optional<ObjectKind> parse_object_kind(std::string_view text) {
  for (const auto& [k, name] : kObjectNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::string MetricRef::str() const {
  return module ? module->str() + "." + metric.str() : metric.str();
}

const Goal* Module::find_goal(const Identifier& id) const {
  return find_by_id(goals, id);
}

const Goal* Module::find_org_goal(const Identifier& id) const {
  return find_by_id(org_goals, id);
}

const Metric* Module::find_metric(const Identifier& id) const {
  return find_by_id(metrics, id);
}

EntityKind Module::kind_of(const Identifier& id) const {
  if (find_goal(id)) return EntityKind::goal;
  if (find_org_goal(id)) return EntityKind::org_goal;
  if (find_metric(id)) return EntityKind::metric;
  return EntityKind::none;
}

const Module* Program::find_module(const Identifier& id) const {
  return find_by_id(modules, id);
}

Module* Program::find_module(const Identifier& id) {
  auto it = std::find_if(modules.begin(), modules.end(),
                         [&](const Module& m) { return m.id == id; });
  return it == modules.end() ? nullptr : &*it;
}

const Connection* Program::find_connection(const Identifier& from,
                                           const Identifier& to) const {
  auto it = std::find_if(
      connections.begin(), connections.end(),
      [&](const Connection& c) { return c.from == from && c.to == to; });
  return it == connections.end() ? nullptr : &*it;
}

ModuleKind module_kind_from_objects(std::span<const ObjectKind> objects) {
  bool organizational =
      std::find(objects.begin(), objects.end(), ObjectKind::organization) !=
      objects.end();
  return organizational ? ModuleKind::organizational : ModuleKind::regular;
}

WellDefinedness is_well_defined(const Module& module) {
  WellDefinedness result;
  if (module.is_organizational() && module.org_goals.empty()) {
    result.violations.emplace_back("Γ empty");
  }
  if (module.goals.empty()) result.violations.emplace_back("G empty");
  if (module.metrics.empty()) result.violations.emplace_back("M empty");
  result.ok = result.violations.empty();
  return result;
}

std::set<Identifier> root_modules(const Program& program) {
  std::set<Identifier> used;
  for (const auto& c : program.connections) {
    if (c.from == c.to) continue;
    if (!program.find_module(c.from) || !program.find_module(c.to)) continue;
    used.insert(c.to);
  }
  std::set<Identifier> roots;
  for (const auto& m : program.modules) {
    if (!used.count(m.id)) roots.insert(m.id);
  }
  return roots;
}

ProgramCheck is_program(const Program& program) {
  const std::set<Identifier> roots = root_modules(program);
  std::set<GoalRef> justified;

  // Whether `ref` of module `owner` grounds a goal it is paired with.
  auto grounded = [&](const Module& owner, const Identifier& ref) {
    if (owner.is_organizational()) {
      if (!owner.find_org_goal(ref)) return false;
      if (roots.count(owner.id)) return true;
      return std::any_of(owner.og_relation.begin(), owner.og_relation.end(),
                         [&](const Derivation& d) {
                           return d.derived == ref &&
                                  contains(justified, owner.id, d.purpose);
                         });
    }
    return owner.find_goal(ref) && contains(justified, owner.id, ref);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& module : program.modules) {
      for (const auto& goal : module.goals) {
        if (contains(justified, module.id, goal.id)) continue;
        bool ok = false;
        for (const auto& c : program.connections) {
          if (ok) break;
          if (c.to != module.id || c.from == c.to) continue;
          const Module* user = program.find_module(c.from);
          if (!user) continue;
          for (const auto& pair : c.relation) {
            if (pair.used_module == c.to && pair.used_goal == goal.id &&
                pair.using_module == c.from && grounded(*user, pair.using_ref)) {
              ok = true;
              break;
            }
          }
        }
        if (!ok && module.is_organizational()) {
          for (const auto& d : module.og_relation) {
            if (d.purpose == goal.id && grounded(module, d.derived)) {
              ok = true;
              break;
            }
          }
        }
        if (ok) {
          justified.insert(GoalRef{module.id, goal.id});
          changed = true;
        }
      }
    }
  }

  ProgramCheck result;
  std::set<GoalRef> unjustified;
  for (const auto& module : program.modules) {
    for (const auto& goal : module.goals) {
      if (!contains(justified, module.id, goal.id)) {
        unjustified.insert(GoalRef{module.id, goal.id});
      }
    }
  }
  result.unjustified.assign(unjustified.begin(), unjustified.end());
  result.is_program = result.unjustified.empty();
  return result;
}

}  // namespace metprog
