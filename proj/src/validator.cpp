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

#include "metprog/validator.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace metprog {

namespace {

std::string quoted(const Identifier& id) { return "'" + id.str() + "'"; }

// Which declarations and connections are usable by the semantic rules.
struct Shape {
  std::map<Identifier, std::size_t> first_module;  // id -> first index
  std::vector<bool> duplicate_module;
  std::vector<bool> usable_connection;  // known endpoints, not a self-loop
  std::vector<bool> duplicate_connection;

  explicit Shape(const Program& p)
      : duplicate_module(p.modules.size(), false),
        usable_connection(p.connections.size(), false),
        duplicate_connection(p.connections.size(), false) {
    for (std::size_t i = 0; i < p.modules.size(); ++i) {
      if (!first_module.emplace(p.modules[i].id, i).second) {
        duplicate_module[i] = true;
      }
    }
    std::set<std::pair<Identifier, Identifier>> seen;
    for (std::size_t i = 0; i < p.connections.size(); ++i) {
      const auto& c = p.connections[i];
      usable_connection[i] = c.from != c.to && first_module.count(c.from) &&
                             first_module.count(c.to);
      if (!seen.emplace(c.from, c.to).second) duplicate_connection[i] = true;
    }
  }

  bool known(const Identifier& id) const { return first_module.count(id) != 0; }
};

std::vector<Diagnostic> check_cycles(const Program& p, const Shape& shape,
                                     const SpanIndex& spans) {
  // Adjacency in declaration order so the reported cycle is deterministic.
  std::map<Identifier, std::vector<std::pair<Identifier, std::size_t>>> edges;
  for (std::size_t i = 0; i < p.connections.size(); ++i) {
    if (!shape.usable_connection[i] || shape.duplicate_connection[i]) continue;
    edges[p.connections[i].from].emplace_back(p.connections[i].to, i);
  }

  enum class Mark { white, grey, black };
  std::map<Identifier, Mark> mark;
  std::vector<std::pair<Identifier, std::size_t>> stack;  // (node, via edge)
  std::vector<Diagnostic> out;

  std::function<bool(const Identifier&)> visit = [&](const Identifier& node) {
    mark[node] = Mark::grey;
    for (const auto& [next, edge] : edges[node]) {
      if (mark[next] == Mark::grey) {
        auto it = std::find_if(stack.begin(), stack.end(),
                               [&](const auto& e) { return e.first == next; });
        std::string path;
        std::vector<SourceSpan> related;
        for (auto i = it; i != stack.end(); ++i) {
          path += i->first.str() + " -> ";
          if (std::next(i) != stack.end()) {
            related.push_back(spans.connection(std::next(i)->second));
          }
        }
        path += next.str();
        related.push_back(spans.connection(edge));
        SourceSpan at = related.front();
        out.push_back(make_diagnostic("E004", "uses-graph cycle: " + path, at,
                                      std::move(related)));
        return true;
      }
      if (mark[next] == Mark::white) {
        stack.emplace_back(next, edge);
        if (visit(next)) return true;
        stack.pop_back();
      }
    }
    mark[node] = Mark::black;
    return false;
  };

  for (const auto& m : p.modules) {
    if (mark[m.id] != Mark::white) continue;
    stack.assign(1, {m.id, 0});
    if (visit(m.id)) break;
  }
  return out;
}

std::vector<Diagnostic> structure(const Program& p, const Shape& shape,
                                  const SpanIndex& spans) {
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < p.modules.size(); ++i) {
    if (!shape.duplicate_module[i]) continue;
    out.push_back(make_diagnostic(
        "E001", "duplicate module " + quoted(p.modules[i].id), spans.module(i),
        {spans.module(shape.first_module.at(p.modules[i].id))}));
  }
  for (std::size_t i = 0; i < p.connections.size(); ++i) {
    const auto& c = p.connections[i];
    for (const auto* end : {&c.from, &c.to}) {
      if (!shape.known(*end)) {
        out.push_back(make_diagnostic(
            "E002", "connection endpoint " + quoted(*end) + " is not a module",
            spans.connection(i)));
      }
    }
    if (c.from == c.to) {
      out.push_back(make_diagnostic(
          "E003", "module " + quoted(c.from) + " cannot use itself",
          spans.connection(i)));
    }
    if (shape.duplicate_connection[i]) {
      auto first = std::find_if(p.connections.begin(), p.connections.end(),
                                [&](const Connection& o) {
                                  return o.from == c.from && o.to == c.to;
                                });
      out.push_back(make_diagnostic(
          "E016",
          "duplicate connection " + c.from.str() + " -> " + c.to.str(),
          spans.connection(i),
          {spans.connection(
              static_cast<std::size_t>(first - p.connections.begin()))}));
    }
  }
  auto cycles = check_cycles(p, shape, spans);
  out.insert(out.end(), cycles.begin(), cycles.end());
  return out;
}

// E005, E006 and E007/E008 for one module.
void check_module(const Module& m, std::size_t index, const SpanIndex& spans,
                  const ValidateOptions& options, std::vector<Diagnostic>& out) {
  const SourceSpan at = spans.module(index);
  const auto defined = is_well_defined(m);
  for (const auto& v : defined.violations) {
    out.push_back(make_diagnostic(
        "E005", "module " + quoted(m.id) + " is not well defined: " + v, at));
  }

  for (const auto& o : m.outputs) {
    if (!m.find_metric(o)) {
      out.push_back(make_diagnostic(
          "E006", "output " + quoted(o) + " is not a metric of " + quoted(m.id),
          spans.entity(SpanKind::output, index, o)));
    }
  }

  std::set<Identifier> broken;  // entities touched by a broken pair
  std::set<Identifier> derived_metrics;
  std::set<Identifier> served_goals;
  for (const auto& pair : m.og_relation) {
    const SourceSpan span = spans.pair(SpanKind::og_pair, index, pair);
    if (!m.find_org_goal(pair.derived)) {
      out.push_back(make_diagnostic(
          "E006", quoted(pair.derived) + " is not an organizational goal of " +
                      quoted(m.id), span));
    }
    if (!m.find_goal(pair.purpose)) {
      out.push_back(make_diagnostic(
          "E006", quoted(pair.purpose) + " is not a measurement goal of " +
                      quoted(m.id), span));
    }
  }
  for (const auto& pair : m.gm_relation) {
    const SourceSpan span = spans.pair(SpanKind::gm_pair, index, pair);
    const bool metric_ok = m.find_metric(pair.derived) != nullptr;
    const bool goal_ok = m.find_goal(pair.purpose) != nullptr;
    if (!metric_ok) {
      out.push_back(make_diagnostic(
          "E006", quoted(pair.derived) + " is not a metric or organizational goal of " +
                      quoted(m.id), span));
    }
    if (!goal_ok) {
      out.push_back(make_diagnostic(
          "E006", quoted(pair.purpose) + " is not a measurement goal of " +
                      quoted(m.id), span));
    }
    if (metric_ok && goal_ok) {
      derived_metrics.insert(pair.derived);
      served_goals.insert(pair.purpose);
    } else {
      broken.insert(pair.derived);
      broken.insert(pair.purpose);
    }
  }

  if (!defined.ok) return;
  for (const auto& metric : m.metrics) {
    if (derived_metrics.count(metric.id) || broken.count(metric.id)) continue;
    out.push_back(make_diagnostic(
        "E007",
        "metric " + quoted(metric.id) + " is not derived from any goal of " +
            quoted(m.id),
        spans.entity(SpanKind::metric, index, metric.id)));
  }
  for (const auto& goal : m.goals) {
    if (served_goals.count(goal.id) || broken.count(goal.id)) continue;
    auto d = make_diagnostic(
        "E008",
        "goal " + quoted(goal.id) + " of " + quoted(m.id) +
            " has no metric derived from it",
        spans.entity(SpanKind::goal, index, goal.id));
    if (options.allow_abstract_goals) d.severity = Severity::warning;
    out.push_back(std::move(d));
  }
}

// Justified goals as the set reachable from the axioms (organizational goals
// of root organizational modules) in the grounding graph.
std::set<GoalRef> reachable_goals(const Program& p, const Shape& shape) {
  using Node = std::pair<Identifier, Identifier>;  // (module, goal or org goal)
  std::map<Node, std::vector<Node>> grounds;

  std::set<Identifier> used;
  for (std::size_t i = 0; i < p.connections.size(); ++i) {
    if (shape.usable_connection[i]) used.insert(p.connections[i].to);
  }

  std::deque<Node> queue;
  std::set<Node> seen;
  for (std::size_t i = 0; i < p.modules.size(); ++i) {
    if (shape.duplicate_module[i]) continue;
    const Module& m = p.modules[i];
    if (!m.is_organizational()) continue;
    for (const auto& pair : m.og_relation) {
      if (!m.find_org_goal(pair.derived) || !m.find_goal(pair.purpose)) continue;
      Node gamma{m.id, pair.derived};
      Node goal{m.id, pair.purpose};
      grounds[gamma].push_back(goal);
      grounds[goal].push_back(gamma);
    }
    if (!used.count(m.id)) {
      for (const auto& g : m.org_goals) {
        if (seen.insert({m.id, g.id}).second) queue.push_back({m.id, g.id});
      }
    }
  }

  for (std::size_t i = 0; i < p.connections.size(); ++i) {
    if (!shape.usable_connection[i]) continue;
    const auto& c = p.connections[i];
    const Module& user = *p.find_module(c.from);
    const Module& usee = *p.find_module(c.to);
    for (const auto& pair : c.relation) {
      if (pair.used_module != c.to || pair.using_module != c.from) continue;
      if (!usee.find_goal(pair.used_goal)) continue;
      const bool source_ok = user.is_organizational()
                                 ? user.find_org_goal(pair.using_ref) != nullptr
                                 : user.find_goal(pair.using_ref) != nullptr;
      if (!source_ok) continue;
      grounds[{c.from, pair.using_ref}].push_back({c.to, pair.used_goal});
    }
  }

  while (!queue.empty()) {
    Node node = queue.front();
    queue.pop_front();
    for (const auto& next : grounds[node]) {
      if (seen.insert(next).second) queue.push_back(next);
    }
  }

  std::set<GoalRef> justified;
  for (const auto& [module, entity] : seen) {
    const Module* m = p.find_module(module);
    if (m && m->find_goal(entity)) justified.insert(GoalRef{module, entity});
  }
  return justified;
}

void check_justification(const Program& p, const Shape& shape,
                         const SpanIndex& spans, std::vector<Diagnostic>& out) {
  const auto justified = reachable_goals(p, shape);
  for (std::size_t i = 0; i < p.modules.size(); ++i) {
    if (shape.duplicate_module[i]) continue;
    const Module& m = p.modules[i];
    for (const auto& goal : m.goals) {
      if (justified.count(GoalRef{m.id, goal.id})) continue;
      out.push_back(make_diagnostic(
          "E010",
          "goal " + quoted(goal.id) + " of " + quoted(m.id) +
              " is not justified by any organizational goal",
          spans.entity(SpanKind::goal, i, goal.id)));
    }
  }
}

void check_inputs(const Program& p, const Shape& shape, const SpanIndex& spans,
                  std::vector<Diagnostic>& out) {
  std::map<Identifier, std::vector<Identifier>> uses;  // user -> used, in order
  for (std::size_t i = 0; i < p.connections.size(); ++i) {
    if (!shape.usable_connection[i] || shape.duplicate_connection[i]) continue;
    uses[p.connections[i].from].push_back(p.connections[i].to);
  }
  auto outputs = [&](const Identifier& module, const Identifier& metric) {
    const Module* m = p.find_module(module);
    return m && std::find(m->outputs.begin(), m->outputs.end(), metric) !=
                    m->outputs.end();
  };

  for (std::size_t i = 0; i < p.modules.size(); ++i) {
    if (shape.duplicate_module[i]) continue;
    const Module& m = p.modules[i];
    const auto& used = uses[m.id];
    for (const auto& ref : m.inputs) {
      const SourceSpan at = spans.input(i, ref);
      if (ref.module) {
        const bool is_used =
            std::find(used.begin(), used.end(), *ref.module) != used.end();
        if (!is_used || !outputs(*ref.module, ref.metric)) {
          std::string why = !shape.known(*ref.module)
                                ? quoted(*ref.module) + " is not a module"
                            : !is_used ? quoted(m.id) + " does not use " +
                                             quoted(*ref.module)
                                       : quoted(*ref.module) +
                                             " does not output it";
          out.push_back(make_diagnostic(
              "E013", "input " + quoted(ref.metric) +
                          " cannot be resolved: " + why, at));
        }
        continue;
      }
      std::vector<Identifier> candidates;
      for (const auto& u : used) {
        if (outputs(u, ref.metric)) candidates.push_back(u);
      }
      if (candidates.empty()) {
        out.push_back(make_diagnostic(
            "E013", "input " + quoted(ref.metric) +
                        " is not an output of any module used by " +
                        quoted(m.id), at));
      } else if (candidates.size() > 1) {
        std::string names;
        std::vector<SourceSpan> related;
        for (const auto& c : candidates) {
          if (!names.empty()) names += ", ";
          names += c.str();
          related.push_back(spans.module(shape.first_module.at(c)));
        }
        out.push_back(make_diagnostic(
            "E013", "input " + quoted(ref.metric) + " is ambiguous (output of " +
                        names + "); qualify it as <module>." + ref.metric.str(),
            at, std::move(related)));
      }
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate_structure(const Program& program,
                                           const SpanIndex& spans) {
  Shape shape(program);
  auto out = structure(program, shape, spans);
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> check_connection_setup(const Program& p,
                                               std::size_t index,
                                               const SpanIndex& spans) {
  std::vector<Diagnostic> out;
  const Connection& c = p.connections.at(index);
  const Module* user = p.find_module(c.from);
  const Module* usee = p.find_module(c.to);
  if (!user || !usee) return out;

  if (c.relation.empty()) {
    out.push_back(make_diagnostic(
        "W106", "connection " + c.from.str() + " -> " + c.to.str() +
                    " has an empty relation", spans.connection(index)));
    return out;
  }

  const bool org = user->is_organizational();
  for (const auto& pair : c.relation) {
    const SourceSpan at = spans.connection_pair(index, pair);

    if (pair.used_module != c.to) {
      out.push_back(make_diagnostic(
          "E012", "left side must name a goal of the used module " +
                      quoted(c.to) + ", not " + quoted(pair.used_module), at));
    } else {
      switch (usee->kind_of(pair.used_goal)) {
        case EntityKind::none:
          out.push_back(make_diagnostic(
              "E006", quoted(pair.used_goal) + " is not declared in " +
                          quoted(c.to), at));
          break;
        case EntityKind::goal:
          break;
        default:
          out.push_back(make_diagnostic(
              "E011", "left side " + quoted(pair.used_goal) +
                          " must be a measurement goal of " + quoted(c.to), at));
      }
    }

    if (pair.using_module != c.from) {
      out.push_back(make_diagnostic(
          "E012", "right side must name a goal of the using module " +
                      quoted(c.from) + ", not " + quoted(pair.using_module), at));
      continue;
    }
    const EntityKind kind = user->kind_of(pair.using_ref);
    if (kind == EntityKind::none) {
      out.push_back(make_diagnostic(
          "E006", quoted(pair.using_ref) + " is not declared in " +
                      quoted(c.from), at));
    } else if (org && kind != EntityKind::org_goal) {
      out.push_back(make_diagnostic(
          "E011", quoted(c.from) + " is organizational: " +
                      quoted(pair.using_ref) +
                      " must be one of its organizational goals", at));
    } else if (!org && kind != EntityKind::goal) {
      out.push_back(make_diagnostic(
          "E011", quoted(c.from) + " is regular: " + quoted(pair.using_ref) +
                      " must be one of its measurement goals", at));
    }
  }
  return out;
}

std::vector<Diagnostic> check_connection_setup(const Connection& connection,
                                               const Program& program) {
  for (std::size_t i = 0; i < program.connections.size(); ++i) {
    if (&program.connections[i] == &connection) {
      return check_connection_setup(program, i);
    }
  }
  Program copy = program;
  copy.connections.push_back(connection);
  return check_connection_setup(copy, copy.connections.size() - 1);
}

std::vector<Diagnostic> check_regular_roots(const Program& program,
                                            const SpanIndex& spans) {
  std::vector<Diagnostic> out;
  const Shape shape(program);
  const auto roots = root_modules(program);
  for (std::size_t i = 0; i < program.modules.size(); ++i) {
    const Module& m = program.modules[i];
    if (shape.duplicate_module[i] || m.is_organizational() || !roots.count(m.id)) {
      continue;
    }
    out.push_back(make_diagnostic(
        "E014",
        "regular module " + quoted(m.id) +
            " is not used by any module; only organizational modules can be "
            "at the highest level",
        spans.module(i)));
  }
  return out;
}

std::vector<Diagnostic> validate(const Program& p, const SpanIndex& spans,
                                 const ValidateOptions& options) {
  const Shape shape(p);
  std::vector<Diagnostic> out = structure(p, shape, spans);

  for (std::size_t i = 0; i < p.modules.size(); ++i) {
    if (shape.duplicate_module[i]) continue;
    check_module(p.modules[i], i, spans, options, out);
  }
  for (std::size_t i = 0; i < p.connections.size(); ++i) {
    if (!shape.usable_connection[i] || shape.duplicate_connection[i]) continue;
    for (auto& d : check_connection_setup(p, i, spans)) {
      if (d.severity == Severity::error) out.push_back(std::move(d));
    }
  }

  check_justification(p, shape, spans, out);
  check_inputs(p, shape, spans, out);
  auto roots = check_regular_roots(p, spans);
  out.insert(out.end(), roots.begin(), roots.end());

  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> validate(const ParseResult& parsed,
                                 const ValidateOptions& options) {
  if (!parsed.program) return parsed.diagnostics;
  return validate(*parsed.program, parsed.spans, options);
}

}  // namespace metprog
