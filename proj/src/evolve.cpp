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

#include "metprog/evolve.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace metprog {

namespace {

template <typename T, typename Key>
std::vector<std::string> list_changes(std::string_view label,
                                      const std::vector<T>& before,
                                      const std::vector<T>& after, Key key) {
  std::vector<std::string> out;
  auto has = [&](const std::vector<T>& items, const std::string& k) {
    return std::any_of(items.begin(), items.end(),
                       [&](const T& item) { return key(item) == k; });
  };
  for (const auto& item : before) {
    if (!has(after, key(item))) out.push_back(std::string(label) + ": -" + key(item));
  }
  for (const auto& item : after) {
    if (!has(before, key(item))) out.push_back(std::string(label) + ": +" + key(item));
  }
  for (const auto& item : after) {
    auto it = std::find_if(before.begin(), before.end(),
                           [&](const T& b) { return key(b) == key(item); });
    if (it != before.end() && !(*it == item)) {
      out.push_back(std::string(label) + ": ~" + key(item));
    }
  }
  if (out.empty() && before != after) {
    out.push_back(std::string(label) + ": reordered");
  }
  return out;
}

std::vector<std::string> module_changes(const Module& a, const Module& b) {
  std::vector<std::string> out;
  auto append = [&](std::vector<std::string> more) {
    out.insert(out.end(), more.begin(), more.end());
  };
  if (a.kind != b.kind) {
    out.push_back("kind: " + std::string(to_string(a.kind)) + " -> " +
                  std::string(to_string(b.kind)));
  }
  append(list_changes("objects", a.objects, b.objects,
                      [](ObjectKind k) { return std::string(to_string(k)); }));
  append(list_changes("inputs", a.inputs, b.inputs,
                      [](const MetricRef& r) { return r.str(); }));
  append(list_changes("outputs", a.outputs, b.outputs,
                      [](const Identifier& id) { return id.str(); }));
  auto by_id = [](const auto& item) { return item.id.str(); };
  append(list_changes("orggoals", a.org_goals, b.org_goals, by_id));
  append(list_changes("goals", a.goals, b.goals, by_id));
  append(list_changes("metrics", a.metrics, b.metrics, by_id));
  auto pair_text = [](const Derivation& d) {
    return "(" + d.derived.str() + ", " + d.purpose.str() + ")";
  };
  append(list_changes("og_relation", a.og_relation, b.og_relation, pair_text));
  append(list_changes("gm_relation", a.gm_relation, b.gm_relation, pair_text));
  return out;
}

std::vector<std::string> connection_changes(const Connection& a,
                                            const Connection& b) {
  return list_changes("relation", a.relation, b.relation,
                      [](const ConnectionPair& p) {
                        return p.used_module.str() + "." + p.used_goal.str() +
                               " -> " + p.using_module.str() + "." +
                               p.using_ref.str();
                      });
}

// First declaration of each id, in declaration order.
std::vector<const Module*> unique_modules(const Program& p) {
  std::vector<const Module*> out;
  std::set<Identifier> seen;
  for (const auto& m : p.modules) {
    if (seen.insert(m.id).second) out.push_back(&m);
  }
  return out;
}

std::vector<const Connection*> unique_connections(const Program& p) {
  std::vector<const Connection*> out;
  std::set<ConnectionId> seen;
  for (const auto& c : p.connections) {
    if (seen.emplace(c.from, c.to).second) out.push_back(&c);
  }
  return out;
}

}  // namespace

PromoteResult promote(const Program& program, const Identifier& id,
                      const std::vector<Goal>& new_org_goals,
                      const std::vector<Derivation>& og_pairs) {
  const Module* original = program.find_module(id);
  if (!original) throw Error("unknown module '" + id.str() + "'");
  if (original->is_organizational()) {
    throw Error("module '" + id.str() + "' is already organizational");
  }
  if (new_org_goals.empty()) {
    throw Error("promoting '" + id.str() + "' needs at least one organizational goal");
  }
  std::set<Identifier> fresh;
  for (const auto& g : new_org_goals) {
    if (original->kind_of(g.id) != EntityKind::none || !fresh.insert(g.id).second) {
      throw Error("organizational goal '" + g.id.str() + "' clashes with a name in '" +
                  id.str() + "'");
    }
  }
  std::set<Derivation> pairs;
  for (const auto& pair : og_pairs) {
    if (!fresh.count(pair.derived) || !original->find_goal(pair.purpose)) {
      throw Error("pair (" + pair.derived.str() + ", " + pair.purpose.str() +
                  ") must relate a new organizational goal to a goal of '" +
                  id.str() + "'");
    }
    if (!pairs.insert(pair).second) {
      throw Error("duplicate pair (" + pair.derived.str() + ", " +
                  pair.purpose.str() + ")");
    }
  }

  PromoteResult result{program, {}};
  Module& module = *result.program.find_module(id);
  module.kind = ModuleKind::organizational;
  module.org_goals = new_org_goals;
  module.og_relation = og_pairs;

  for (const auto& c : program.connections) {
    if (c.from != id) continue;
    for (const auto& pair : c.relation) {
      if (pair.using_module == id && module.find_goal(pair.using_ref)) {
        result.worklist.push_back(ResourcingItem{c.from, c.to, pair});
      }
    }
  }
  return result;
}

Module skeleton_from_metrics(const std::vector<Identifier>& metric_ids,
                             const Identifier& module_id) {
  if (metric_ids.empty()) {
    throw Error("a skeleton module needs at least one metric");
  }
  Module m;
  m.id = module_id;
  m.kind = ModuleKind::regular;
  std::set<Identifier> seen;
  for (const auto& metric : metric_ids) {
    if (!seen.insert(metric).second) {
      throw Error("duplicate metric '" + metric.str() + "'");
    }
    Identifier goal("g_" + metric.str());
    m.metrics.push_back(Metric{metric, std::nullopt});
    m.outputs.push_back(metric);
    m.goals.push_back(
        Goal{goal, std::string(kPlaceholderPrefix) + metric.str(), std::nullopt});
    m.gm_relation.push_back(Derivation{metric, goal});
  }
  // A metric named like another metric's placeholder goal would share the
  // module namespace.
  for (const auto& g : m.goals) {
    if (seen.count(g.id)) {
      throw Error("placeholder goal '" + g.id.str() + "' clashes with a metric");
    }
  }
  return m;
}

bool ProgramDiff::empty() const {
  return !renamed && added_modules.empty() && removed_modules.empty() &&
         changed_modules.empty() && added_connections.empty() &&
         removed_connections.empty() && changed_connections.empty();
}

std::set<Identifier> ProgramDiff::added_module_ids() const {
  std::set<Identifier> out;
  for (const auto& m : added_modules) out.insert(m.id);
  return out;
}

std::set<ConnectionId> ProgramDiff::added_connection_ids() const {
  std::set<ConnectionId> out;
  for (const auto& c : added_connections) out.emplace(c.from, c.to);
  return out;
}

std::set<Identifier> ProgramDiff::touched_modules() const {
  std::set<Identifier> out = added_module_ids();
  out.insert(removed_modules.begin(), removed_modules.end());
  for (const auto& c : changed_modules) out.insert(c.module);
  for (const auto& c : added_connections) {
    out.insert(c.from);
    out.insert(c.to);
  }
  for (const auto& [from, to] : removed_connections) {
    out.insert(from);
    out.insert(to);
  }
  for (const auto& c : changed_connections) {
    out.insert(c.from);
    out.insert(c.to);
  }
  return out;
}

ProgramDiff diff(const Program& old_program, const Program& new_program) {
  ProgramDiff out;
  if (old_program.name != new_program.name) {
    out.renamed.emplace(old_program.name, new_program.name);
  }

  const auto old_modules = unique_modules(old_program);
  const auto new_modules = unique_modules(new_program);
  for (const Module* m : old_modules) {
    if (!new_program.find_module(m->id)) out.removed_modules.insert(m->id);
  }
  for (const Module* m : new_modules) {
    const Module* before = old_program.find_module(m->id);
    if (!before) {
      out.added_modules.push_back(*m);
    } else if (!(*before == *m)) {
      out.changed_modules.push_back(
          ModuleChange{m->id, module_changes(*before, *m), *m});
    }
  }

  for (const Connection* c : unique_connections(old_program)) {
    if (!new_program.find_connection(c->from, c->to)) {
      out.removed_connections.emplace(c->from, c->to);
    }
  }
  for (const Connection* c : unique_connections(new_program)) {
    const Connection* before = old_program.find_connection(c->from, c->to);
    if (!before) {
      out.added_connections.push_back(*c);
    } else if (!(*before == *c)) {
      out.changed_connections.push_back(
          ConnectionChange{c->from, c->to, connection_changes(*before, *c), *c});
    }
  }
  return out;
}

Program apply_diff(const Program& old_program, const ProgramDiff& d) {
  Program out;
  out.name = d.renamed ? d.renamed->second : old_program.name;
  for (const Module* m : unique_modules(old_program)) {
    if (d.removed_modules.count(m->id)) continue;
    auto changed = std::find_if(d.changed_modules.begin(), d.changed_modules.end(),
                                [&](const ModuleChange& c) { return c.module == m->id; });
    out.modules.push_back(changed == d.changed_modules.end() ? *m : changed->updated);
  }
  out.modules.insert(out.modules.end(), d.added_modules.begin(),
                     d.added_modules.end());

  for (const Connection* c : unique_connections(old_program)) {
    if (d.removed_connections.count({c->from, c->to})) continue;
    auto changed = std::find_if(
        d.changed_connections.begin(), d.changed_connections.end(),
        [&](const ConnectionChange& x) { return x.from == c->from && x.to == c->to; });
    out.connections.push_back(changed == d.changed_connections.end() ? *c
                                                                     : changed->updated);
  }
  out.connections.insert(out.connections.end(), d.added_connections.begin(),
                         d.added_connections.end());
  return out;
}

bool equivalent(const Program& a, const Program& b) {
  auto normalized = [](Program p) {
    std::stable_sort(p.modules.begin(), p.modules.end(),
                     [](const Module& x, const Module& y) { return x.id < y.id; });
    std::stable_sort(p.connections.begin(), p.connections.end(),
                     [](const Connection& x, const Connection& y) {
                       return std::tie(x.from, x.to) < std::tie(y.from, y.to);
                     });
    return p;
  };
  return normalized(a) == normalized(b);
}

}  // namespace metprog
